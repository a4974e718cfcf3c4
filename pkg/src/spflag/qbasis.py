"""Building blocks for the Schubert calculus of the symplectic flag manifold.

Three families live here: the Q-tilde symmetric polynomials indexed by
partitions, the classical type A Schubert polynomials indexed by
permutations, and the standard-tableau counts that tie the two together
in rank n.
"""

from __future__ import annotations

from . import weyl
from .polyring import MultiPoly, divided_difference_word, elementary
from .weyl import Partition, SignedPermutation

_Q_CACHE: dict[tuple[tuple[int, ...], int], MultiPoly] = {}
_SCHUB_CACHE: dict[SignedPermutation, MultiPoly] = {}


def _as_partition(lam) -> Partition:
    return lam if isinstance(lam, Partition) else Partition(lam)


def _two_row(i: int, j: int, n: int) -> MultiPoly:
    # product rule for a pair of rows, quadratic in the one-row polynomials
    result = elementary(i, n) * elementary(j, n)
    sign = -1
    for r in range(1, j + 1):
        result = result + 2 * sign * (elementary(i + r, n) * elementary(j - r, n))
        sign = -sign
    return result


def qtilde(lam, n: int) -> MultiPoly:
    """The Q-tilde polynomial for a partition, in x_1..x_n.

    One row is an elementary symmetric polynomial, two rows follow the
    quadratic rule, and longer partitions expand as a Pfaffian along the
    first row.  Identical to zero exactly when the first part exceeds n.
    """
    lam = _as_partition(lam)
    key = (lam.parts, n)
    cached = _Q_CACHE.get(key)
    if cached is not None:
        return cached

    parts = lam.parts
    if len(parts) == 0:
        result = MultiPoly.one(n)
    elif len(parts) == 1:
        result = elementary(parts[0], n)
    elif len(parts) == 2:
        result = _two_row(parts[0], parts[1], n)
    else:
        padded = parts if len(parts) % 2 == 0 else parts + (0,)
        result = MultiPoly.zero(n)
        sign = 1
        for j in range(1, len(padded)):
            rest = padded[1:j] + padded[j + 1 :]
            head = _two_row(padded[0], padded[j], n)
            result = result + sign * (head * qtilde(Partition(rest), n))
            sign = -sign

    _Q_CACHE[key] = result
    return result


def schubert_a(varpi: SignedPermutation) -> MultiPoly:
    """Type A Schubert polynomial of an unbarred permutation.

    Computed by running divided differences down from the staircase
    monomial x_1^(n-1) x_2^(n-2) ... x_{n-1}.
    """
    if not varpi.is_unbarred():
        raise ValueError(f"{varpi} has barred entries")
    cached = _SCHUB_CACHE.get(varpi)
    if cached is not None:
        return cached
    n = varpi.n
    staircase = MultiPoly.one(n)
    for i in range(1, n):
        staircase = staircase * MultiPoly.x(i, n) ** (n - i)
    u = varpi.inverse() * weyl.varpi0(n)
    result = divided_difference_word(u.reduced_word(), staircase)
    _SCHUB_CACHE[varpi] = result
    return result


def max_unimodal_length(word) -> int:
    """Length of the longest subsequence that strictly falls, then
    strictly rises (either phase may be empty)."""
    word = list(word)
    best = 0
    falling: list[int] = []  # longest strictly falling subsequence ending here
    turned: list[int] = []  # longest fall-then-rise subsequence ending here
    for j, a in enumerate(word):
        d = 1 + max((falling[k] for k in range(j) if word[k] > a), default=0)
        u = 1 + max(
            (max(falling[k], turned[k]) for k in range(j) if word[k] < a), default=0
        )
        falling.append(d)
        turned.append(u)
        best = max(best, d, u)
    return best


def kraskiewicz_count(u: SignedPermutation, lam) -> int:
    """Number of standard decompositions of u with the given row lengths.

    A decomposition fills rows of lengths lam_1 > lam_2 > ... with letters
    so that reading the rows bottom to top, each left to right, spells a
    reduced word for u, every row is unimodal, and after each row the
    longest unimodal subsequence read so far has exactly that row's length.
    """
    lam = _as_partition(lam)
    if not lam.is_strict():
        raise ValueError(f"row lengths {lam} must be strictly decreasing")
    if lam.weight() != u.length():
        return 0
    n = u.n
    blocks = tuple(reversed(lam.parts))  # reading order: bottom row first
    total = lam.weight()

    word: list[int] = []
    falling: list[int] = []
    turned: list[int] = []
    count = 0

    def step(v, block_idx, pos, last, rising, best):
        nonlocal count
        if block_idx == len(blocks):
            count += 1
            return
        block_len = blocks[block_idx]
        remaining = total - len(word)
        for a in range(n):
            if pos > 0:
                if a == last or (rising and a < last):
                    continue
                next_rising = rising or a > last
            else:
                next_rising = False
            v2 = v * weyl.simple(a, n)
            if v2.length() != v.length() + 1:
                continue
            if (v2.inverse() * u).length() != remaining - 1:
                continue
            j = len(word)
            d = 1 + max((falling[k] for k in range(j) if word[k] > a), default=0)
            r = 1 + max(
                (max(falling[k], turned[k]) for k in range(j) if word[k] < a),
                default=0,
            )
            best2 = max(best, d, r)
            if best2 > block_len:
                continue
            word.append(a)
            falling.append(d)
            turned.append(r)
            if pos + 1 == block_len:
                if best2 == block_len:
                    step(v2, block_idx + 1, 0, -1, False, best2)
            else:
                step(v2, block_idx, pos + 1, a, next_rising, best2)
            word.pop()
            falling.pop()
            turned.pop()

    step(weyl.identity(n), 0, 0, -1, False, 0)
    return count


def bh_coefficients(
    w: SignedPermutation,
) -> dict[tuple[Partition, SignedPermutation], int]:
    """Tableau counts pairing each unbarred permutation with the row
    shapes it admits inside w.

    Keys are (shape, permutation); a pair appears only when the count is
    positive and the permutation splits off w with additive length.  Row
    lengths run over all strictly decreasing shapes, including those with
    a part larger than n (a single unimodal row can reach length 2n-1).
    """
    n = w.n
    out: dict[tuple[Partition, SignedPermutation], int] = {}
    for varpi in weyl.s_n_elements(n):
        rem = w.length() - varpi.length()
        if rem < 0:
            continue
        u = w * varpi.inverse()
        if u.length() != rem:
            continue
        for parts in weyl.strict_partitions(rem, 2 * n - 1):
            lam = Partition(parts)
            e = kraskiewicz_count(u, lam)
            if e:
                out[(lam, varpi)] = e
    return out
