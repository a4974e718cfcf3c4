"""Schubert polynomials for the symplectic flag manifold Sp(2n)/B.

The polynomial c_w attached to a signed permutation w is assembled from
tableau counts: each admissible factorization of w contributes a product
of a Q-tilde polynomial and a signed type A Schubert polynomial.
Together with the pairs whose partition has a repeated part, these form
a basis of the full polynomial ring, which is what makes exact expansion
and structure constants possible.
"""

from __future__ import annotations

from fractions import Fraction

from . import weyl
from .polyring import MultiPoly, divided_difference_word
from .qbasis import bh_coefficients, qtilde, schubert_a
from .weyl import Partition, SignedPermutation

# an expansion key is either a SignedPermutation or a (Partition, perm) pair
BasisKey = SignedPermutation | tuple[Partition, SignedPermutation]

_C_CACHE: dict[tuple[SignedPermutation, int], MultiPoly] = {}
_BASIS_CACHE: dict[tuple[int, int], list[tuple[BasisKey, MultiPoly]]] = {}


def c_pair(lam, varpi: SignedPermutation, n: int) -> MultiPoly:
    """The product basis element: (-1)^l(varpi) * qtilde(lam) * schubert_a(varpi)."""
    lam = lam if isinstance(lam, Partition) else Partition(lam)
    if lam.parts and lam.parts[0] > n:
        raise ValueError(f"partition {lam} does not fit rank {n}")
    if varpi.n != n:
        varpi = weyl.embed(varpi, n)
    sign = -1 if varpi.length() % 2 else 1
    return sign * (qtilde(lam, n) * schubert_a(varpi))


def schubert_c(w: SignedPermutation, n: int | None = None) -> MultiPoly:
    """The symplectic Schubert polynomial of w in x_1..x_n.

    Sums c_pair over the tableau-count decomposition of w, keeping only
    partitions that fit the rank (the rest vanish identically anyway).
    """
    if n is None:
        n = w.n
    if n != w.n:
        w = weyl.embed(w, n)
    key = (w, n)
    cached = _C_CACHE.get(key)
    if cached is not None:
        return cached
    result = MultiPoly.zero(n)
    for (lam, varpi), e in bh_coefficients(w).items():
        if lam.parts and lam.parts[0] > n:
            continue
        result = result + e * c_pair(lam, varpi, n)
    _C_CACHE[key] = result
    return result


def basis_indices(n: int, degree: int) -> list[BasisKey]:
    """Indices of the degree-d slice of the polynomial ring basis:
    Schubert elements of length d plus non-strict pairs of total weight d."""
    return [key for key, _ in _basis(n, degree)]


def _basis(n: int, degree: int) -> list[tuple[BasisKey, MultiPoly]]:
    key = (n, degree)
    cached = _BASIS_CACHE.get(key)
    if cached is not None:
        return cached
    items: list[tuple[BasisKey, MultiPoly]] = []
    for w in weyl.all_elements(n):
        if w.length() == degree:
            items.append((w, schubert_c(w)))
    for varpi in weyl.s_n_elements(n):
        rem = degree - varpi.length()
        if rem < 0:
            continue
        for lam in weyl.partitions(rem, n):
            if lam.is_strict():
                continue
            items.append(((lam, varpi), c_pair(lam, varpi, n)))
    _BASIS_CACHE[key] = items
    return items


def _solve_integer_system(rows: list[list[int]], k: int) -> list[int]:
    """Solve rows * x = rhs for a unique integer solution.

    Each row is k matrix entries followed by the right-hand side.
    Fraction-free forward elimination keeps everything in integers;
    back-substitution checks that the solution really is integral.
    """
    mat = [list(r) for r in rows]
    m = len(mat)
    prev = 1
    for col in range(k):
        piv = next((i for i in range(col, m) if mat[i][col] != 0), None)
        assert piv is not None, "basis lost column rank"
        if piv != col:
            mat[col], mat[piv] = mat[piv], mat[col]
        p = mat[col][col]
        for i in range(col + 1, m):
            row_i = mat[i]
            row_c = mat[col]
            factor = row_i[col]
            for j in range(col, k + 1):
                row_i[j] = (p * row_i[j] - factor * row_c[j]) // prev
        prev = p
    for i in range(k, m):
        assert mat[i][k] == 0, "inconsistent expansion system"
    solution: list[Fraction] = [Fraction(0)] * k
    for i in range(k - 1, -1, -1):
        acc = Fraction(mat[i][k])
        for j in range(i + 1, k):
            acc -= mat[i][j] * solution[j]
        solution[i] = acc / mat[i][i]
    out = []
    for v in solution:
        assert v.denominator == 1, "expansion produced a non-integer"
        out.append(int(v))
    return out


def expand(h: MultiPoly, n: int | None = None) -> dict[BasisKey, int]:
    """Write h as an integer combination of Schubert elements and
    non-strict pairs, one degree at a time, and verify the result."""
    if n is None:
        n = h.n
    if n != h.n:
        raise ValueError(f"rank mismatch: {h.n} vs {n}")
    out: dict[BasisKey, int] = {}
    for degree, component in h.homogeneous_components().items():
        family = _basis(n, degree)
        monomials = sorted(
            {e for _, f in family for e in f.terms} | set(component.terms)
        )
        rows = [
            [f.terms.get(mono, 0) for _, f in family] + [component.terms.get(mono, 0)]
            for mono in monomials
        ]
        coeffs = _solve_integer_system(rows, len(family))
        for (key, _), c in zip(family, coeffs):
            if c:
                out[key] = c
    rebuilt = MultiPoly.zero(n)
    for key, c in out.items():
        if isinstance(key, SignedPermutation):
            rebuilt = rebuilt + c * schubert_c(key)
        else:
            rebuilt = rebuilt + c * c_pair(key[0], key[1], n)
    assert rebuilt == h, "expansion failed to reconstruct its input"
    return out


def structure_constants(
    u: SignedPermutation, v: SignedPermutation, n: int | None = None
) -> dict[BasisKey, int]:
    """Expansion of the product c_u * c_v."""
    if n is None:
        n = max(u.n, v.n)
    return expand(schubert_c(u, n) * schubert_c(v, n), n)


def scalar_product(f: MultiPoly, g: MultiPoly, n: int | None = None) -> MultiPoly:
    """Divided difference along the longest element applied to f*g.

    Always W-invariant in the x variables.  Normalized so that Schubert
    classes of complementary length pair to the constant 1 precisely when
    the indices multiply to the longest element.
    """
    if n is None:
        n = f.n
    if f.n != n or g.n != n:
        raise ValueError("rank mismatch in scalar product")
    word = weyl.longest(n).reduced_word()
    return divided_difference_word(word, f * g)


def ideal_membership(h: MultiPoly, n: int | None = None):
    """Whether h lies in the span of the non-strict pairs (the defining
    ideal of the cohomology presentation), plus that sub-expansion."""
    expansion = expand(h, n)
    witness = {k: v for k, v in expansion.items() if not isinstance(k, SignedPermutation)}
    member = len(witness) == len(expansion)
    return member, witness
