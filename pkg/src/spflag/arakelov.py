"""Arithmetic intersection numbers for the symplectic flag manifold.

The invariant arithmetic Chow group splits as a free abelian group on the
Schubert classes plus a group of invariant differential forms.  A class
is stored in that split shape: an integer combination over signed
permutations together with a class-ready InvForm.  Polynomials move into
this picture through the basis expansion of the symplectic module; every
basis pair whose partition has a repeated part lands in the form summand
through a Bott-Chern correction form.

The correction forms themselves are graded families c~_k.  The complete
family is available for rank n <= 2; at higher rank the degrees 3..n of
the filtration family need input this package does not derive, so those
components raise a ValueError carrying UNSUPPORTED_DEGREE and accept
externally supplied forms through the `extra` hook instead.
"""

from __future__ import annotations

from fractions import Fraction
from functools import lru_cache
from math import factorial
from typing import Mapping, Sequence

from . import invforms, symplectic
from .invforms import InvForm
from .polyring import MultiPoly
from .weyl import Partition, SignedPermutation

Coeff = int | Fraction

UNSUPPORTED_DEGREE = (
    "unsupported: requires [T2, §3] two-step Bott–Chern formulas"
)


def harmonic(r: int) -> Fraction:
    """The r-th harmonic number 1 + 1/2 + ... + 1/r, zero for r = 0."""
    return sum((Fraction(1, i) for i in range(1, r + 1)), Fraction(0))


class BottChern:
    """Graded family of correction forms attached to a labeled bundle.

    components maps the degree k to the form c~_k; degrees listed in
    `missing` are acknowledged as nonzero but not computable at this
    rank, and reading them raises.
    """

    __slots__ = ("label", "n", "components", "missing")

    def __init__(
        self,
        label: str,
        n: int,
        components: Mapping[int, InvForm],
        missing=frozenset(),
    ):
        self.label = label
        self.n = n
        self.components = {k: f for k, f in components.items() if not f.is_zero()}
        self.missing = frozenset(missing)

    def component(self, k: int) -> InvForm:
        if k in self.missing:
            raise ValueError(UNSUPPORTED_DEGREE)
        return self.components.get(k, InvForm.zero(self.n))

    def is_complete(self) -> bool:
        return not self.missing

    def total(self) -> InvForm:
        if self.missing:
            raise ValueError(UNSUPPORTED_DEGREE)
        total = InvForm.zero(self.n)
        for form in self.components.values():
            total = total + form
        return total

    def dual(self) -> "BottChern":
        flipped = {
            k: (f if k % 2 == 0 else -f) for k, f in self.components.items()
        }
        return BottChern(self.label + "*", self.n, flipped, self.missing)


def bc_lagrangian(n: int) -> BottChern:
    """Correction forms of the Lagrangian tautological sequence.

    Degree k carries (-1)^(k-1) H_(k-1) p_(k-1) of the rank-n quotient,
    with H the harmonic numbers.
    """
    quotient = invforms.curvature_E(n, n).dual()
    components = {}
    for k in range(1, 2 * n + 1):
        weight = harmonic(k - 1)
        if not weight:
            continue
        sign = 1 if (k - 1) % 2 == 0 else -1
        components[k] = (sign * weight) * invforms.power_sum(quotient, k - 1)
    return BottChern("E_LG", n, components)


def bc_filtration(
    n: int, extra: Mapping[int, InvForm] | None = None
) -> BottChern:
    """Correction forms of the stepwise filtration of the subbundle.

    Degree 1 vanishes, degree 2 is minus the sum of all O_ij, and degrees
    above n vanish.  Degrees 3..n are not derivable here; supply them via
    `extra` or their lookup raises with UNSUPPORTED_DEGREE.
    """
    total = InvForm.zero(n)
    for i in range(1, n + 1):
        for j in range(i + 1, n + 1):
            total = total - invforms.omega_lower(i, j, n)
    components: dict[int, InvForm] = {2: total}
    missing = set(range(3, n + 1))
    if extra:
        for k, form in extra.items():
            if k not in missing:
                raise ValueError(f"degree {k} is not an open component")
            if form.n != n:
                raise ValueError(f"rank mismatch: {form.n} vs {n}")
            components[k] = form
            missing.discard(k)
    return BottChern("E", n, components, missing)


@lru_cache(maxsize=None)
def _bc_pair_default(n: int) -> BottChern:
    return bc_pair(n)


def bc_pair(n: int, extra: Mapping[int, InvForm] | None = None) -> BottChern:
    """Correction forms of the subbundle paired with its dual.

    Assembled degree by degree from the Lagrangian family, the filtration
    family against the Chern forms of the rank-n subbundle, and the
    dd^c cross term.  A degree that touches an open filtration component
    is marked missing rather than silently dropped.
    """
    filt = bc_filtration(n, extra)
    filt_dual = filt.dual()
    lagrangian = bc_lagrangian(n)
    sub = invforms.curvature_E(n, n)
    chern_sub = invforms.chern_forms(sub)
    chern_dual = invforms.chern_forms(sub.dual())
    components: dict[int, InvForm] = {}
    missing = set()
    for k in range(1, 2 * n + 1):
        if any(m <= min(k, n) for m in filt.missing):
            missing.add(k)
            continue
        total = lagrangian.component(k)
        for a in range(1, min(k, n) + 1):
            b = k - a
            if b <= n:
                total = total + filt.component(a) * chern_dual[b]
                total = total + filt_dual.component(a) * chern_sub[b]
            if 1 <= b <= n:
                total = total + invforms.ddc(
                    filt.component(a)
                ) * filt_dual.component(b)
        components[k] = total
    return BottChern("(E,E*)", n, components, missing)


# -- the form part lives modulo exact pieces ------------------------------
#
# Two invariant forms represent the same arithmetic class when they differ
# by something in the image of the two type components of d.  That image
# is spanned, degree by degree, by the balanced parts of d applied to the
# basic odd monomials: the vertical-free wedge monomials of torus weight
# zero.  reduce_form picks the canonical representative by exact Gaussian
# elimination against that span.  At top degree the span is empty (a
# monomial one factor short of full always carries a nonzero weight), so
# integration never sees the reduction.


def _horizontal_symbols(n: int):
    syms = []
    for i in range(1, n + 1):
        for j in range(i + 1, n + 1):
            syms.append(("w", i, j))
            syms.append(("wb", i, j))
    for p in range(1, n + 1):
        for q in range(p, n + 1):
            syms.append(("u", p, q))
            syms.append(("ub", p, q))
    return syms


def _symbol_weight(sym, n: int) -> tuple[int, ...]:
    wt = [0] * n
    kind, a, b = sym
    sign = 1 if kind in ("w", "u") else -1
    wt[a - 1] += sign
    wt[b - 1] += sign if kind in ("u", "ub") else -sign
    return tuple(wt)


def _excess(factors) -> int:
    bars = sum(1 for s in factors if s[0] in ("wb", "ub"))
    return 2 * bars - len(factors)


@lru_cache(maxsize=None)
def _exact_rows(n: int, k: int):
    """Echelon basis of the degree-k exact subspace, keyed by pivot."""
    from itertools import combinations

    syms = sorted(_horizontal_symbols(n), key=invforms._sym_key)
    weights = {s: _symbol_weight(s, n) for s in syms}
    zero = (0,) * n
    rows: dict[tuple, dict] = {}
    for beta in combinations(syms, 2 * k - 1):
        if abs(_excess(beta)) != 1:
            continue
        total = zero
        for s in beta:
            total = tuple(a + b for a, b in zip(total, weights[s]))
        if total != zero:
            continue
        image = invforms.d_form(InvForm(n, {(2 * k, beta): 1}))
        row: dict[tuple, Fraction] = {}
        for (_, factors), c in image.terms.items():
            assert all(s[0] != "t" for s in factors), (
                "differential of a basic monomial left the basic complex"
            )
            if _excess(factors) == 0:
                row[factors] = Fraction(c)
        _eliminate(row, rows)
        if row:
            pivot = max(row)
            inv = 1 / row[pivot]
            rows[pivot] = {m: inv * c for m, c in row.items()}
    return rows


def _eliminate(row: dict, rows: dict) -> None:
    """Subtract echelon rows until no pivot monomial survives in row."""
    while True:
        pivot = None
        for m, c in row.items():
            if c and m in rows and (pivot is None or m > pivot):
                pivot = m
        if pivot is None:
            break
        c = row[pivot]
        for m, v in rows[pivot].items():
            row[m] = row.get(m, 0) - c * v
    for m in [m for m, v in row.items() if not v]:
        del row[m]


def reduce_form(a: InvForm, n: int | None = None) -> InvForm:
    """Canonical representative of a class-ready balanced form."""
    if n is None:
        n = a.n
    if a.n != n:
        raise ValueError(f"rank mismatch: {a.n} vs {n}")
    by_degree: dict[int, dict] = {}
    for (h, factors), c in a.terms.items():
        if h != len(factors) or _excess(factors) != 0 or any(
            s[0] == "t" for s in factors
        ):
            raise ValueError("form part must be class-ready of pure type")
        if h % 2:
            raise ValueError("form part must have even degree")
        by_degree.setdefault(h // 2, {})[factors] = Fraction(c)
    out: dict = {}
    for k, row in by_degree.items():
        _eliminate(row, _exact_rows(n, k))
        for m, c in row.items():
            out[(2 * k, m)] = int(c) if c.denominator == 1 else c
    return InvForm(n, out)


def poly_to_form(p: MultiPoly, n: int | None = None) -> InvForm:
    """Substitute the curvature representative for each variable."""
    if n is None:
        n = p.n
    if p.n != n:
        raise ValueError(f"rank mismatch: {p.n} vs {n}")
    roots = [invforms.x_form(i, n) for i in range(1, n + 1)]
    total = InvForm.zero(n)
    for exp, c in p.terms.items():
        term = InvForm.constant(n, c)
        for i, e in enumerate(exp):
            for _ in range(e):
                term = term * roots[i]
        total = total + term
    return total


class ArithClass:
    """Split invariant arithmetic class: Schubert part plus form part.

    The form summand is an equivalence class modulo exact invariant
    forms; the constructor stores its canonical representative, so two
    classes compare equal exactly when they agree in the quotient.
    """

    __slots__ = ("n", "schubert", "form")

    def __init__(
        self,
        n: int,
        schubert: Mapping[SignedPermutation, Coeff],
        form: InvForm,
    ):
        if form.n != n:
            raise ValueError(f"rank mismatch: {form.n} vs {n}")
        self.n = n
        self.schubert = {w: c for w, c in schubert.items() if c}
        self.form = reduce_form(form, n)

    @staticmethod
    def zero(n: int) -> "ArithClass":
        return ArithClass(n, {}, InvForm.zero(n))

    @staticmethod
    def from_schubert(w: SignedPermutation) -> "ArithClass":
        return ArithClass(w.n, {w: 1}, InvForm.zero(w.n))

    @staticmethod
    def from_form(eta: InvForm) -> "ArithClass":
        return ArithClass(eta.n, {}, eta)

    def __eq__(self, other: object) -> bool:
        return (
            isinstance(other, ArithClass)
            and self.n == other.n
            and self.schubert == other.schubert
            and self.form == other.form
        )

    def __add__(self, other: "ArithClass") -> "ArithClass":
        if self.n != other.n:
            raise ValueError(f"rank mismatch: {self.n} vs {other.n}")
        merged = dict(self.schubert)
        for w, c in other.schubert.items():
            merged[w] = merged.get(w, 0) + c
        return ArithClass(self.n, merged, self.form + other.form)

    def __neg__(self) -> "ArithClass":
        return ArithClass(
            self.n, {w: -c for w, c in self.schubert.items()}, -self.form
        )

    def __sub__(self, other: "ArithClass") -> "ArithClass":
        return self + (-other)

    def scale(self, c: Coeff) -> "ArithClass":
        return ArithClass(
            self.n, {w: c * v for w, v in self.schubert.items()}, c * self.form
        )

    def __rmul__(self, c: Coeff) -> "ArithClass":
        if isinstance(c, (int, Fraction)):
            return self.scale(c)
        return NotImplemented

    def is_zero(self) -> bool:
        return not self.schubert and self.form.is_zero()

    def schubert_poly(self) -> MultiPoly:
        """The polynomial carried by the Schubert part."""
        total = MultiPoly.zero(self.n)
        for w, c in self.schubert.items():
            total = total + c * symplectic.schubert_c(w)
        return total

    def to_json(self) -> dict:
        rows = sorted(
            self.schubert.items(), key=lambda kv: (kv[0].length(), kv[0].window)
        )
        return {
            "schubert": [
                {"w": list(w.window), "coeff": str(c)} for w, c in rows
            ],
            "form": self.form.to_json(),
        }


def _largest_repeated(lam: Partition) -> int:
    parts = lam.parts
    for v in sorted(set(parts), reverse=True):
        if parts.count(v) >= 2:
            return v
    raise ValueError(f"partition {lam} has no repeated part")


def arith_class(h: MultiPoly, n: int | None = None) -> ArithClass:
    """Split a polynomial into Schubert and form parts.

    Strict basis components keep their integer coefficients; each pair
    whose partition repeats a part r contributes its reduced polynomial
    wedged with the degree-2r pair correction form, with sign (-1)^r.
    """
    if n is None:
        n = h.n
    coefficients = symplectic.expand(h, n)
    schubert: dict[SignedPermutation, Coeff] = {}
    form = InvForm.zero(n)
    for key, c in coefficients.items():
        if isinstance(key, SignedPermutation):
            schubert[key] = c
            continue
        lam, varpi = key
        r = _largest_repeated(lam)
        reduced = list(lam.parts)
        reduced.remove(r)
        reduced.remove(r)
        correction = _bc_pair_default(n).component(2 * r)
        poly = symplectic.c_pair(Partition(reduced), varpi, n)
        sign = 1 if r % 2 == 0 else -1
        form = form + (sign * c) * (poly_to_form(poly, n) * correction)
    return ArithClass(n, schubert, form)


def arith_product(
    a: ArithClass, b: ArithClass, n: int | None = None
) -> ArithClass:
    """Product in the split ring.

    Schubert parts multiply through the polynomial ring and re-split;
    a Schubert part hits a form through the curvature substitution; two
    forms multiply as (dd^c of one) wedge the other.
    """
    if n is None:
        n = a.n
    if a.n != n or b.n != n:
        raise ValueError("rank mismatch in product")
    poly_a = a.schubert_poly()
    poly_b = b.schubert_poly()
    result = arith_class(poly_a * poly_b, n)
    form = (
        result.form
        + poly_to_form(poly_a, n) * b.form
        + poly_to_form(poly_b, n) * a.form
        + invforms.ddc(a.form) * b.form
    )
    return ArithClass(n, result.schubert, form)


def arith_monomial_degree(
    exponents: Sequence[int], n: int | None = None
) -> tuple[Fraction, Fraction]:
    """Arithmetic degree of a monomial in the arithmetic Chern roots.

    The exponents must sum to n^2 + 1.  Returns (degree, r) where the
    class equals r times the volume form and the degree is half the
    integral of that class.
    """
    if n is None:
        n = len(exponents)
    if len(exponents) != n:
        raise ValueError(f"expected {n} exponents, got {len(exponents)}")
    if any(e < 0 for e in exponents):
        raise ValueError("exponents must be nonnegative")
    if sum(exponents) != n * n + 1:
        raise ValueError(
            f"total degree must be {n * n + 1}, got {sum(exponents)}"
        )
    cls = arith_class(MultiPoly.monomial(tuple(exponents)), n)
    assert not cls.schubert, "top-degree monomial left a Schubert residue"
    integral = invforms.integrate_top(cls.form, n)
    scale = 1
    for k in range(1, n + 1):
        scale *= factorial(2 * k - 1)
    return integral / 2, integral * scale


def faltings_height(n: int) -> Fraction:
    """Arithmetic self-degree of the weighted anticanonical class.

    Computes the degree of (sum of i times the i-th root)^(n^2 + 1).
    """
    weighted = MultiPoly.zero(n)
    for i in range(1, n + 1):
        exp = tuple(1 if j == i else 0 for j in range(1, n + 1))
        weighted = weighted + i * MultiPoly.monomial(exp)
    cls = arith_class(weighted ** (n * n + 1), n)
    assert not cls.schubert
    return invforms.integrate_top(cls.form, n) / 2
