"""Exact polynomials in x_1..x_n with a signed Weyl group action.

Coefficients stay integers throughout; divided differences perform the
division exactly and refuse to continue if a remainder ever appears,
since a nonzero remainder would mean the calling code fed them a
polynomial outside their domain.
"""

from __future__ import annotations

import itertools
from fractions import Fraction
from typing import Iterable, Mapping

from . import weyl
from .weyl import SignedPermutation

Exponents = tuple[int, ...]
Coeff = int | Fraction


class MultiPoly:
    """A polynomial stored as {exponent vector: coefficient}.

    >>> f = MultiPoly.x(1, 2) + MultiPoly.x(2, 2)
    >>> print((f * f).to_text())
    x1^2 + 2*x1*x2 + x2^2
    """

    __slots__ = ("n", "terms")

    def __init__(self, n: int, terms: Mapping[Exponents, Coeff] | None = None):
        self.n = n
        clean: dict[Exponents, Coeff] = {}
        if terms:
            for exp, c in terms.items():
                if len(exp) != n:
                    raise ValueError(f"exponent vector {exp} has wrong arity for rank {n}")
                if any(e < 0 for e in exp):
                    raise ValueError(f"negative exponent in {exp}")
                if c:
                    clean[tuple(exp)] = c
        self.terms = clean

    # -- constructors ------------------------------------------------

    @staticmethod
    def zero(n: int) -> "MultiPoly":
        return MultiPoly(n)

    @staticmethod
    def one(n: int) -> "MultiPoly":
        return MultiPoly.constant(1, n)

    @staticmethod
    def constant(c: Coeff, n: int) -> "MultiPoly":
        return MultiPoly(n, {(0,) * n: c})

    @staticmethod
    def x(i: int, n: int) -> "MultiPoly":
        """The variable x_i, 1-indexed."""
        if not 1 <= i <= n:
            raise ValueError(f"variable index {i} out of range for rank {n}")
        exp = tuple(1 if j == i - 1 else 0 for j in range(n))
        return MultiPoly(n, {exp: 1})

    @staticmethod
    def monomial(exp: Exponents, coeff: Coeff = 1) -> "MultiPoly":
        return MultiPoly(len(exp), {tuple(exp): coeff})

    # -- ring operations ---------------------------------------------

    def _require_same_rank(self, other: "MultiPoly") -> None:
        if self.n != other.n:
            raise ValueError(f"rank mismatch: {self.n} vs {other.n}")

    def __add__(self, other: "MultiPoly") -> "MultiPoly":
        self._require_same_rank(other)
        terms = dict(self.terms)
        for exp, c in other.terms.items():
            terms[exp] = terms.get(exp, 0) + c
        return MultiPoly(self.n, terms)

    def __sub__(self, other: "MultiPoly") -> "MultiPoly":
        return self + (-other)

    def __neg__(self) -> "MultiPoly":
        return MultiPoly(self.n, {e: -c for e, c in self.terms.items()})

    def __mul__(self, other: "MultiPoly | int | Fraction") -> "MultiPoly":
        if isinstance(other, (int, Fraction)):
            return MultiPoly(self.n, {e: c * other for e, c in self.terms.items()})
        self._require_same_rank(other)
        terms: dict[Exponents, Coeff] = {}
        for e1, c1 in self.terms.items():
            for e2, c2 in other.terms.items():
                exp = tuple(a + b for a, b in zip(e1, e2))
                terms[exp] = terms.get(exp, 0) + c1 * c2
        return MultiPoly(self.n, terms)

    __rmul__ = __mul__

    def __pow__(self, k: int) -> "MultiPoly":
        if k < 0:
            raise ValueError("negative power")
        result = MultiPoly.one(self.n)
        base = self
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    def __eq__(self, other: object) -> bool:
        return (
            isinstance(other, MultiPoly)
            and self.n == other.n
            and self.terms == other.terms
        )

    def __hash__(self) -> int:
        return hash((self.n, frozenset(self.terms.items())))

    def is_zero(self) -> bool:
        return not self.terms

    # -- structure ----------------------------------------------------

    def total_degree(self) -> int:
        """Degree of the highest term (zero polynomial has degree 0)."""
        return max((sum(e) for e in self.terms), default=0)

    def is_homogeneous(self) -> bool:
        degrees = {sum(e) for e in self.terms}
        return len(degrees) <= 1

    def homogeneous_components(self) -> dict[int, "MultiPoly"]:
        buckets: dict[int, dict[Exponents, Coeff]] = {}
        for exp, c in self.terms.items():
            buckets.setdefault(sum(exp), {})[exp] = c
        return {d: MultiPoly(self.n, t) for d, t in sorted(buckets.items())}

    def coefficient(self, exp: Exponents) -> Coeff:
        return self.terms.get(tuple(exp), 0)

    def restrict(self, m: int) -> "MultiPoly":
        """Set x_{m+1} = ... = x_n = 0 and view the result in rank m."""
        if m > self.n:
            raise ValueError(f"cannot restrict rank {self.n} to {m}")
        terms: dict[Exponents, Coeff] = {}
        for exp, c in self.terms.items():
            if any(exp[m:]):
                continue
            terms[exp[:m]] = c
        return MultiPoly(m, terms)

    def extend(self, n: int) -> "MultiPoly":
        """View a rank-m polynomial inside rank n >= m."""
        if n < self.n:
            raise ValueError(f"cannot extend rank {self.n} to {n}")
        pad = (0,) * (n - self.n)
        return MultiPoly(n, {exp + pad: c for exp, c in self.terms.items()})

    # -- serialization -------------------------------------------------

    def _sorted_terms(self) -> list[tuple[Exponents, Coeff]]:
        # graded lex, highest degree first, then x1 > x2 > ... within a degree
        return sorted(
            self.terms.items(),
            key=lambda item: (-sum(item[0]), tuple(-e for e in item[0])),
        )

    def to_json(self) -> list[dict]:
        return [
            {"coeff": str(c), "exp": list(exp)} for exp, c in self._sorted_terms()
        ]

    @staticmethod
    def from_json(data: Iterable[Mapping], n: int) -> "MultiPoly":
        terms: dict[Exponents, Coeff] = {}
        for item in data:
            text = str(item["coeff"])
            coeff: Coeff = Fraction(text) if "/" in text else int(text)
            exp = tuple(item["exp"])
            terms[exp] = terms.get(exp, 0) + coeff
        return MultiPoly(n, terms)

    def to_text(self) -> str:
        if not self.terms:
            return "0"
        chunks = []
        for exp, c in self._sorted_terms():
            vars_part = "*".join(
                f"x{i + 1}" if e == 1 else f"x{i + 1}^{e}"
                for i, e in enumerate(exp)
                if e
            )
            if not vars_part:
                body = str(abs(c))
            elif abs(c) == 1:
                body = vars_part
            else:
                body = f"{abs(c)}*{vars_part}"
            sign = "-" if c < 0 else "+"
            chunks.append((sign, body))
        head_sign, head = chunks[0]
        text = ("-" if head_sign == "-" else "") + head
        for sign, body in chunks[1:]:
            text += f" {sign} {body}"
        return text

    def __repr__(self) -> str:
        return f"MultiPoly({self.n}, {self.to_text()!r})"


def weyl_action(w: SignedPermutation, f: MultiPoly) -> MultiPoly:
    """Act by w: x_i maps to sign(w(i)) * x_{|w(i)|}."""
    if w.n != f.n:
        raise ValueError(f"rank mismatch: {w.n} vs {f.n}")
    terms: dict[Exponents, Coeff] = {}
    for exp, c in f.terms.items():
        new = [0] * f.n
        sign = 1
        for i, e in enumerate(exp):
            if not e:
                continue
            v = w.window[i]
            new[abs(v) - 1] = e
            if v < 0 and e % 2:
                sign = -sign
        key = tuple(new)
        terms[key] = terms.get(key, 0) + sign * c
    return MultiPoly(f.n, terms)


def divided_difference(i: int, f: MultiPoly) -> MultiPoly:
    """The operator (f - s_i f) / (x_i - x_{i+1}), or for i = 0 the
    quotient (f - s_0 f) / (2 x_1)."""
    n = f.n
    if not 0 <= i < n:
        raise ValueError(f"operator index {i} out of range for rank {n}")
    if i == 0:
        # f - s_0 f doubles every odd-power term in x_1 and kills the
        # rest, so dividing by 2 x_1 just lowers those exponents by one
        terms: dict[Exponents, Coeff] = {}
        for exp, c in f.terms.items():
            if exp[0] % 2 == 0:
                continue
            lowered = (exp[0] - 1,) + exp[1:]
            terms[lowered] = terms.get(lowered, 0) + c
        return MultiPoly(n, terms)

    g = f - weyl_action(weyl.simple(i, n), f)
    # divide by x_i - x_{i+1}: synthetic division in the variable x_i,
    # treating x_{i+1} as the evaluation point
    slot, shift = i - 1, i
    by_power: dict[int, dict[Exponents, Coeff]] = {}
    for exp, c in g.terms.items():
        k = exp[slot]
        rest = exp[:slot] + (0,) + exp[slot + 1 :]
        by_power.setdefault(k, {})[rest] = c
    if not by_power:
        return MultiPoly.zero(n)
    top = max(by_power)
    carry: dict[Exponents, Coeff] = {}
    quotient: dict[Exponents, Coeff] = {}
    for k in range(top, 0, -1):
        layer = by_power.get(k, {})
        for exp, c in layer.items():
            carry[exp] = carry.get(exp, 0) + c
        carry = {e: c for e, c in carry.items() if c}
        for exp, c in carry.items():
            q_exp = exp[:slot] + (k - 1,) + exp[slot + 1 :]
            quotient[q_exp] = quotient.get(q_exp, 0) + c
        # multiply the running quotient head by x_{i+1} for the next layer
        carry = {
            e[:shift] + (e[shift] + 1,) + e[shift + 1 :]: c for e, c in carry.items()
        }
    remainder = dict(by_power.get(0, {}))
    for exp, c in carry.items():
        remainder[exp] = remainder.get(exp, 0) + c
    assert all(c == 0 for c in remainder.values()), "division left a remainder"
    return MultiPoly(n, quotient)


def divided_difference_word(word: Iterable[int], f: MultiPoly) -> MultiPoly:
    """Compose divided differences along a reduced word.

    The word multiplies left to right as a group element; the operator is
    the matching composition, so the last letter acts on f first.  A word
    that is not reduced is rejected.
    """
    word = tuple(word)
    if weyl.from_word(word, f.n).length() != len(word):
        raise ValueError(f"word {word} is not reduced")
    for a in reversed(word):
        f = divided_difference(a, f)
    return f


def elementary(k: int, n: int) -> MultiPoly:
    """The elementary symmetric polynomial e_k(x_1..x_n)."""
    if k < 0:
        raise ValueError("negative index")
    if k > n:
        return MultiPoly.zero(n)
    terms = {}
    for subset in itertools.combinations(range(n), k):
        exp = tuple(1 if j in subset else 0 for j in range(n))
        terms[exp] = 1
    return MultiPoly(n, terms)


def elementary_squares(k: int, n: int) -> MultiPoly:
    """e_k evaluated on the squared variables x_1^2 .. x_n^2."""
    base = elementary(k, n)
    return MultiPoly(n, {tuple(2 * e for e in exp): c for exp, c in base.terms.items()})


if __name__ == "__main__":
    import doctest

    doctest.testmod()
