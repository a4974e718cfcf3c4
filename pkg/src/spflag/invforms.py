"""Invariant differential forms on the symplectic flag manifold.

Everything is generated from the structure constants of sp(2n, C) in a
fixed matrix realization.  A basis element is written as a triple
(A, B, C) standing for the block matrix [[A, B], [C, -A^t]] with B and C
symmetric; brackets are computed blockwise in exact integers, and the
Maurer-Cartan equation d(dual of c) = -sum f_ab^c dual_a wedge dual_b
turns the bracket table into the exterior differential.

One-form symbols come in five kinds: "w"/"wb" are the root duals indexed
by i < j, "u"/"ub" the symmetric-block duals indexed by p <= q, and "t"
the Cartan duals.  The "t" directions are vertical for the fibration over
the flag manifold; they must cancel out of any differential of a basic
form, and the dd^c operator checks that they do.

Every term carries a power of the formal constant gamma (gamma^2 is the
usual i/2pi normalization factor; it is never evaluated).  The paired
two-form gamma^2 * w_ij ^ wb_ij is the closed (1,1)-form printed as O_ij,
and similarly O^pq from the "u" family.  Public index labels are mirrored
(i maps to n+1-i) relative to the internal ones, matching the convention
that orders the flag's tautological quotients the opposite way; the flip
happens only when symbols are built from or rendered to tokens.
"""

from __future__ import annotations

import itertools
from fractions import Fraction
from functools import lru_cache
from math import factorial
from typing import Iterable, Mapping

Symbol = tuple
Coeff = int | Fraction
TermKey = tuple[int, tuple[Symbol, ...]]

_BARRED = {"wb", "ub"}
_UNBARRED = {"w", "u"}


def _sym_key(sym: Symbol) -> tuple:
    kind = sym[0]
    if kind in ("w", "wb"):
        return (0, sym[1], sym[2], 0 if kind == "w" else 1)
    if kind in ("u", "ub"):
        return (1, sym[1], sym[2], 0 if kind == "u" else 1)
    return (2, sym[1], 0, 0)


def _normalize(seq: Iterable[Symbol]):
    """Sort one-form factors, tracking the permutation sign.

    Returns (sign, sorted tuple), or None when a factor repeats.
    """
    items = list(seq)
    keys = [_sym_key(s) for s in items]
    sign = 1
    for i in range(1, len(items)):
        j = i
        while j > 0 and keys[j - 1] > keys[j]:
            keys[j - 1], keys[j] = keys[j], keys[j - 1]
            items[j - 1], items[j] = items[j], items[j - 1]
            sign = -sign
            j -= 1
        if j > 0 and keys[j - 1] == keys[j]:
            return None
    return sign, tuple(items)


# -- sp(2n) structure constants -----------------------------------------


def _mat(n, entries):
    rows = [[0] * n for _ in range(n)]
    for (i, j), v in entries.items():
        rows[i - 1][j - 1] = v
    return tuple(tuple(r) for r in rows)


def _mul(x, y):
    n = len(x)
    return tuple(
        tuple(sum(x[i][k] * y[k][j] for k in range(n)) for j in range(n))
        for i in range(n)
    )


def _lin(a, x, b, y):
    n = len(x)
    return tuple(
        tuple(a * x[i][j] + b * y[i][j] for j in range(n)) for i in range(n)
    )


def _t(x):
    n = len(x)
    return tuple(tuple(x[j][i] for j in range(n)) for i in range(n))


def _bracket(left, right):
    a1, b1, c1 = left
    a2, b2, c2 = right
    a = _lin(1, _lin(1, _mul(a1, a2), -1, _mul(a2, a1)),
             1, _lin(1, _mul(b1, c2), -1, _mul(b2, c1)))
    b = _lin(1, _lin(1, _mul(a1, b2), 1, _mul(b2, _t(a1))),
             -1, _lin(1, _mul(a2, b1), 1, _mul(b1, _t(a2))))
    c = _lin(1, _lin(1, _mul(c1, a2), 1, _mul(_t(a2), c1)),
             -1, _lin(1, _mul(c2, a1), 1, _mul(_t(a1), c2)))
    return a, b, c


@lru_cache(maxsize=None)
def _basis(n: int):
    zero = _mat(n, {})
    items = []
    for i in range(1, n + 1):
        for j in range(i + 1, n + 1):
            items.append((("w", i, j), (_mat(n, {(i, j): 1}), zero, zero)))
            items.append((("wb", i, j), (_mat(n, {(j, i): -1}), zero, zero)))
    for p in range(1, n + 1):
        for q in range(p, n + 1):
            sym = {(p, q): 1, (q, p): 1} if p != q else {(p, p): 1}
            neg = {k: -v for k, v in sym.items()}
            items.append((("u", p, q), (zero, _mat(n, sym), zero)))
            items.append((("ub", p, q), (zero, zero, _mat(n, neg))))
    for i in range(1, n + 1):
        items.append((("t", i), (_mat(n, {(i, i): 1}), zero, zero)))
    return tuple(items)


def _decompose(triple, n: int) -> dict[Symbol, int]:
    a, b, c = triple
    out: dict[Symbol, int] = {}

    def put(sym, v):
        if v:
            out[sym] = v

    for i in range(1, n + 1):
        put(("t", i), a[i - 1][i - 1])
        for j in range(i + 1, n + 1):
            put(("w", i, j), a[i - 1][j - 1])
            put(("wb", i, j), -a[j - 1][i - 1])
    for p in range(1, n + 1):
        put(("u", p, p), b[p - 1][p - 1])
        put(("ub", p, p), -c[p - 1][p - 1])
        for q in range(p + 1, n + 1):
            put(("u", p, q), b[p - 1][q - 1])
            put(("ub", p, q), -c[p - 1][q - 1])
    # closure check: the bracket must land back in the span of the basis
    basis = dict(_basis(n))
    rebuilt = (_mat(n, {}), _mat(n, {}), _mat(n, {}))
    for sym, v in out.items():
        mat = basis[sym]
        rebuilt = tuple(_lin(1, r, v, m) for r, m in zip(rebuilt, mat))
    assert rebuilt == triple, "bracket left the basis span"
    return out


@lru_cache(maxsize=None)
def _d_table(n: int):
    """For each coframe symbol c, the terms of d(dual_c) as
    (coefficient, symbol, symbol) triples."""
    basis = _basis(n)
    table: dict[Symbol, list] = {sym: [] for sym, _ in basis}
    for a in range(len(basis)):
        for b in range(a + 1, len(basis)):
            prod = _bracket(basis[a][1], basis[b][1])
            for sym, f in _decompose(prod, n).items():
                table[sym].append((-f, basis[a][0], basis[b][0]))
    return {sym: tuple(rows) for sym, rows in table.items()}


# -- the exterior algebra ------------------------------------------------


class InvForm:
    """Exact linear combination of wedge monomials in the coframe.

    terms maps (gamma exponent, sorted factor tuple) to a coefficient.
    """

    __slots__ = ("n", "terms")

    def __init__(self, n: int, terms: Mapping[TermKey, Coeff]):
        self.n = n
        clean: dict[TermKey, Coeff] = {}
        for key, c in terms.items():
            if c:
                clean[key] = c
        self.terms = clean

    @staticmethod
    def zero(n: int) -> "InvForm":
        return InvForm(n, {})

    @staticmethod
    def constant(n: int, c: Coeff = 1) -> "InvForm":
        return InvForm(n, {(0, ()): c})

    @staticmethod
    def one_form(n: int, sym: Symbol) -> "InvForm":
        return InvForm(n, {(0, (sym,)): 1})

    def is_zero(self) -> bool:
        return not self.terms

    def __eq__(self, other: object) -> bool:
        return (
            isinstance(other, InvForm)
            and self.n == other.n
            and self.terms == other.terms
        )

    def __hash__(self) -> int:
        return hash((self.n, frozenset(self.terms.items())))

    def __add__(self, other: "InvForm") -> "InvForm":
        if self.n != other.n:
            raise ValueError(f"rank mismatch: {self.n} vs {other.n}")
        terms = dict(self.terms)
        for key, c in other.terms.items():
            terms[key] = terms.get(key, 0) + c
        return InvForm(self.n, terms)

    def __neg__(self) -> "InvForm":
        return InvForm(self.n, {k: -c for k, c in self.terms.items()})

    def __sub__(self, other: "InvForm") -> "InvForm":
        return self + (-other)

    def scale(self, c: Coeff) -> "InvForm":
        return InvForm(self.n, {k: c * v for k, v in self.terms.items()})

    def __rmul__(self, c: Coeff) -> "InvForm":
        if isinstance(c, (int, Fraction)):
            return self.scale(c)
        return NotImplemented

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            return self.scale(other)
        if isinstance(other, InvForm):
            return self.wedge(other)
        return NotImplemented

    def wedge(self, other: "InvForm") -> "InvForm":
        if self.n != other.n:
            raise ValueError(f"rank mismatch: {self.n} vs {other.n}")
        out: dict[TermKey, Coeff] = {}
        for (h1, f1), c1 in self.terms.items():
            for (h2, f2), c2 in other.terms.items():
                norm = _normalize(f1 + f2)
                if norm is None:
                    continue
                sign, factors = norm
                key = (h1 + h2, factors)
                out[key] = out.get(key, 0) + sign * c1 * c2
        return InvForm(self.n, out)

    def __pow__(self, k: int) -> "InvForm":
        if k < 0:
            raise ValueError("negative wedge power")
        result = InvForm.constant(self.n)
        for _ in range(k):
            result = result.wedge(self)
        return result

    def is_class_ready(self) -> bool:
        """Net gamma weight zero on every monomial."""
        return all(h == len(f) for h, f in self.terms)

    # -- rendering -------------------------------------------------------

    def _public_tokens(self, factors) -> list[tuple[int, int, int]]:
        """Sorted (family, i, j) triples for a fully paired monomial."""
        tokens = []
        i = 0
        while i < len(factors):
            if i + 1 >= len(factors):
                raise ValueError("monomial is not a product of paired forms")
            a, b = factors[i], factors[i + 1]
            if a[0] == "w" and b == ("wb", a[1], a[2]):
                fam = 0
            elif a[0] == "u" and b == ("ub", a[1], a[2]):
                fam = 1
            else:
                raise ValueError("monomial is not a product of paired forms")
            x, y = sorted((self.n + 1 - a[1], self.n + 1 - a[2]))
            tokens.append((fam, x, y))
            i += 2
        tokens.sort()
        return tokens

    def _rendered(self) -> list[tuple[list[str], Coeff]]:
        if not self.is_class_ready():
            raise ValueError("form carries unreduced gamma weight")
        items = []
        for (h, factors), c in self.terms.items():
            items.append((self._public_tokens(factors), c))
        items.sort(key=lambda item: (len(item[0]), item[0]))
        return [
            (
                [
                    (f"O_{x}{y}" if fam == 0 else f"O^{x}{y}")
                    for fam, x, y in tokens
                ],
                c,
            )
            for tokens, c in items
        ]

    def to_json(self) -> list[dict]:
        return [
            {"monomial": tokens, "coeff": str(c)}
            for tokens, c in self._rendered()
        ]

    @staticmethod
    def from_json(data: Iterable[Mapping], n: int) -> "InvForm":
        total = InvForm.zero(n)
        for item in data:
            text = str(item["coeff"])
            coeff: Coeff = Fraction(text) if "/" in text else int(text)
            term = InvForm.constant(n, coeff)
            for token in item["monomial"]:
                if token.startswith("O_"):
                    builder, body = omega_lower, token[2:]
                elif token.startswith("O^"):
                    builder, body = omega_upper, token[2:]
                else:
                    raise ValueError(f"unknown form token {token!r}")
                i, j = (int(ch) for ch in body)
                term = term.wedge(builder(i, j, n))
            total = total + term
        return total

    def _raw_tokens(self, h: int, factors) -> list[str]:
        names = {"w": "W_", "wb": "Wb_", "u": "W^", "ub": "Wb^"}
        tokens = [f"g{h}"] if h else []
        for sym in factors:
            if sym[0] == "t":
                tokens.append(f"T_{self.n + 1 - sym[1]}")
            else:
                a, b = _flip(sym[1], sym[2], self.n)
                tokens.append(f"{names[sym[0]]}{a}{b}")
        return tokens

    def to_text(self) -> str:
        if not self.terms:
            return "0"
        try:
            chunks = self._rendered()
        except ValueError:
            # fall back to raw one-form tokens for unpaired forms
            chunks = sorted(
                ((self._raw_tokens(h, f), c)
                 for (h, f), c in self.terms.items()),
                key=lambda item: (len(item[0]), item[0]),
            )
        parts = []
        for tokens, c in chunks:
            body = "*".join(tokens)
            if not body:
                body = str(abs(c))
            elif abs(c) != 1:
                body = f"{abs(c)}*{body}"
            parts.append(("-" if c < 0 else "+", body))
        head_sign, head = parts[0]
        text = ("-" if head_sign == "-" else "") + head
        for sign, body in parts[1:]:
            text += f" {sign} {body}"
        return text

    def __repr__(self) -> str:
        try:
            return f"InvForm({self.n}, {self.to_text()!r})"
        except ValueError:
            return f"InvForm({self.n}, <{len(self.terms)} raw terms>)"


def wedge(a: InvForm, b: InvForm) -> InvForm:
    return a.wedge(b)


# -- the closed (1,1) generators ----------------------------------------


def _flip(i: int, j: int, n: int) -> tuple[int, int]:
    x, y = n + 1 - i, n + 1 - j
    return (x, y) if x <= y else (y, x)


def omega_lower(i: int, j: int, n: int) -> InvForm:
    """The closed form printed O_ij, for 1 <= i < j <= n."""
    if not (1 <= i < j <= n):
        raise ValueError(f"need 1 <= i < j <= n, got ({i},{j})")
    a, b = _flip(i, j, n)
    return InvForm(n, {(2, (("w", a, b), ("wb", a, b))): 1})


def omega_upper(p: int, q: int, n: int) -> InvForm:
    """The closed form printed O^pq, for 1 <= p <= q <= n."""
    if not (1 <= p <= n and 1 <= q <= n):
        raise ValueError(f"indices out of range: ({p},{q})")
    p, q = min(p, q), max(p, q)
    a, b = _flip(p, q, n)
    return InvForm(n, {(2, (("u", a, b), ("ub", a, b))): 1})


def omega_top(n: int) -> InvForm:
    """The canonical volume form: the product of every O_ij and O^pq."""
    factors = []
    for i in range(1, n + 1):
        for j in range(i + 1, n + 1):
            factors.extend([("w", i, j), ("wb", i, j)])
    for p in range(1, n + 1):
        for q in range(p, n + 1):
            factors.extend([("u", p, q), ("ub", p, q)])
    norm = _normalize(factors)
    assert norm is not None and norm[0] == 1
    return InvForm(n, {(2 * n * n, norm[1]): 1})


# -- differential --------------------------------------------------------


def d_form(a: InvForm) -> InvForm:
    """Exterior differential from the Maurer-Cartan structure equations."""
    table = _d_table(a.n)
    out: dict[TermKey, Coeff] = {}
    for (h, factors), coeff in a.terms.items():
        for idx, sym in enumerate(factors):
            leibniz = -1 if idx % 2 else 1
            head, tail = factors[:idx], factors[idx + 1:]
            for f, s1, s2 in table[sym]:
                norm = _normalize(head + (s1, s2) + tail)
                if norm is None:
                    continue
                sign, mono = norm
                key = (h, mono)
                out[key] = out.get(key, 0) + coeff * f * leibniz * sign
    return InvForm(a.n, out)


def _bar_excess(factors) -> int:
    bars = sum(1 for s in factors if s[0] in _BARRED)
    return 2 * bars - len(factors)


def _has_vertical(factors) -> bool:
    return any(s[0] == "t" for s in factors)


def _vertical_free(a: InvForm, stage: str) -> InvForm:
    for _, factors in a.terms:
        if _has_vertical(factors):
            raise ValueError(
                f"input is not basic: vertical one-forms survive {stage}"
            )
    return a


def _type_part(a: InvForm, excess: int) -> InvForm:
    return InvForm(
        a.n,
        {
            (h, f): c
            for (h, f), c in a.terms.items()
            if _bar_excess(f) == excess
        },
    )


def ddc(a: InvForm, n: int | None = None) -> InvForm:
    """The dd^c of a basic form of pure (k,k) type.

    Differentiates, keeps the part with one extra barred factor,
    differentiates again, and keeps the balanced part; the two gamma
    units of the i/2pi normalization are added at the end.  Vertical
    survivors at either stage mean the input was not basic.
    """
    if n is None:
        n = a.n
    if a.n != n:
        raise ValueError(f"rank mismatch: {a.n} vs {n}")
    for _, factors in a.terms:
        if _has_vertical(factors) or _bar_excess(factors) != 0:
            raise ValueError("ddc needs a vertical-free form of type (k,k)")
    first = _vertical_free(d_form(a), "d")
    second = _vertical_free(d_form(_type_part(first, 1)), "d after d")
    balanced = _type_part(second, 0)
    return InvForm(n, {(h + 2, f): c for (h, f), c in balanced.terms.items()})


# -- curvature and characteristic forms ----------------------------------


class CurvatureMatrix:
    """Square matrix of (1,1) entries attached to a named bundle."""

    __slots__ = ("label", "n", "entries")

    def __init__(self, label: str, n: int, entries):
        self.label = label
        self.n = n
        self.entries = tuple(tuple(row) for row in entries)
        size = len(self.entries)
        assert all(len(row) == size for row in self.entries)

    @property
    def size(self) -> int:
        return len(self.entries)

    def dual(self) -> "CurvatureMatrix":
        flipped = [
            [-self.entries[b][a] for b in range(self.size)]
            for a in range(self.size)
        ]
        return CurvatureMatrix(self.label + "*", self.n, flipped)

    def trace(self) -> InvForm:
        total = InvForm.zero(self.n)
        for a in range(self.size):
            total = total + self.entries[a][a]
        return total


def curvature_E(k: int, n: int) -> CurvatureMatrix:
    """Curvature of the k-th tautological subbundle (gamma units included)."""
    if not 1 <= k <= n:
        raise ValueError(f"subbundle index {k} out of range for rank {n}")
    entries = []
    for alpha in range(1, k + 1):
        row = []
        for beta in range(1, k + 1):
            terms: dict[TermKey, Coeff] = {}
            for j in range(k + 1, n + 1):
                norm = _normalize((("w", alpha, j), ("wb", beta, j)))
                sign, mono = norm
                terms[(2, mono)] = terms.get((2, mono), 0) - sign
            for p in range(1, n + 1):
                u = ("u", min(p, alpha), max(p, alpha))
                ub = ("ub", min(p, beta), max(p, beta))
                norm = _normalize((u, ub))
                sign, mono = norm
                terms[(2, mono)] = terms.get((2, mono), 0) - sign
            row.append(InvForm(n, terms))
        entries.append(row)
    return CurvatureMatrix(f"E_{k}", n, entries)


def curvature_Q(k: int, n: int) -> CurvatureMatrix:
    """Curvature of the k-th tautological quotient line."""
    if not 1 <= k <= n:
        raise ValueError(f"quotient index {k} out of range for rank {n}")
    total = InvForm.zero(n)
    for i in range(1, k):
        total = total + InvForm(n, {(2, (("w", i, k), ("wb", i, k))): 1})
    for j in range(k + 1, n + 1):
        total = total - InvForm(n, {(2, (("w", k, j), ("wb", k, j))): 1})
    for p in range(1, n + 1):
        u = ("u", min(p, k), max(p, k))
        total = total - InvForm(n, {(2, (u, ("ub", u[1], u[2]))): 1})
    return CurvatureMatrix(f"Q_{k}", n, [[total]])


def curvature_L(i: int, n: int) -> CurvatureMatrix:
    """Curvature of the line whose first Chern form is -x_i."""
    inner = curvature_Q(n + 1 - i, n)
    return CurvatureMatrix(f"L_{i}", n, inner.entries)


def x_form(i: int, n: int) -> InvForm:
    """The (1,1)-form representing the i-th Chern root variable."""
    return -curvature_L(i, n).trace()


def chern_forms(matrix: CurvatureMatrix) -> list[InvForm]:
    """All elementary symmetric invariants [c_0, ..., c_size]."""
    n = matrix.n
    size = matrix.size
    out = [InvForm.constant(n)]
    for k in range(1, size + 1):
        total = InvForm.zero(n)
        for subset in itertools.combinations(range(size), k):
            for perm in itertools.permutations(range(k)):
                sign = _perm_sign(perm)
                prod = InvForm.constant(n, sign)
                for r, c in enumerate(perm):
                    prod = prod.wedge(matrix.entries[subset[r]][subset[c]])
                total = total + prod
        out.append(total)
    return out


def _perm_sign(perm) -> int:
    sign = 1
    for a, b in itertools.combinations(range(len(perm)), 2):
        if perm[a] > perm[b]:
            sign = -sign
    return sign


def power_sum(matrix: CurvatureMatrix, r: int) -> InvForm:
    """Trace of the r-th matrix power; r = 0 gives the rank."""
    if r < 0:
        raise ValueError("negative power")
    if r == 0:
        return InvForm.constant(matrix.n, matrix.size)
    power = matrix.entries
    for _ in range(r - 1):
        power = [
            [
                _sum_forms(
                    matrix.n,
                    (power[a][k].wedge(matrix.entries[k][b])
                     for k in range(matrix.size)),
                )
                for b in range(matrix.size)
            ]
            for a in range(matrix.size)
        ]
    return _sum_forms(matrix.n, (power[a][a] for a in range(matrix.size)))


def _sum_forms(n: int, forms) -> InvForm:
    total = InvForm.zero(n)
    for f in forms:
        total = total + f
    return total


# -- integration ----------------------------------------------------------


def integrate_top(a: InvForm, n: int | None = None) -> Fraction:
    """Integral of a top-degree class-ready form over the flag manifold.

    The volume form omega_top(n) integrates to the product of the
    reciprocals 1/(2k-1)!.
    """
    if n is None:
        n = a.n
    if a.n != n:
        raise ValueError(f"rank mismatch: {a.n} vs {n}")
    top = omega_top(n)
    (target_key,) = top.terms
    coeff: Coeff = 0
    for key, c in a.terms.items():
        if key != target_key:
            raise ValueError("integrand is not a multiple of the volume form")
        coeff = c
    unit = Fraction(1)
    for k in range(1, n + 1):
        unit /= factorial(2 * k - 1)
    return Fraction(coeff) * unit
