from fractions import Fraction

import pytest

from spflag import weyl
from spflag.polyring import MultiPoly, elementary, elementary_squares
from spflag.qbasis import (
    bh_coefficients,
    kraskiewicz_count,
    max_unimodal_length,
    qtilde,
    schubert_a,
)
from spflag.weyl import Partition, SignedPermutation


def perm(*window):
    return SignedPermutation(window)


def exact_rank(polys):
    """Rank of a family of polynomials, by Gaussian elimination over
    exact rationals on the monomial coefficient matrix."""
    columns = sorted({e for f in polys for e in f.terms})
    rows = [[Fraction(f.terms.get(c, 0)) for c in columns] for f in polys]
    rank = 0
    for col in range(len(columns)):
        pivot = next((r for r in range(rank, len(rows)) if rows[r][col]), None)
        if pivot is None:
            continue
        rows[rank], rows[pivot] = rows[pivot], rows[rank]
        inv = 1 / rows[rank][col]
        rows[rank] = [v * inv for v in rows[rank]]
        for r in range(len(rows)):
            if r != rank and rows[r][col]:
                factor = rows[r][col]
                rows[r] = [a - factor * b for a, b in zip(rows[r], rows[rank])]
        rank += 1
    return rank


class TestQtilde:
    def test_empty_partition(self):
        assert qtilde((), 2) == MultiPoly.one(2)

    def test_single_rows_are_elementary(self):
        for n in (2, 3):
            for k in range(n + 2):
                assert qtilde((k,), n) == elementary(k, n)

    def test_frozen_small_values(self):
        assert qtilde((1,), 2) == MultiPoly(2, {(1, 0): 1, (0, 1): 1})
        assert qtilde((1, 1), 2) == MultiPoly(2, {(2, 0): 1, (0, 2): 1})
        assert qtilde((3,), 2).is_zero()
        assert qtilde((2, 1), 2) == elementary(2, 2) * elementary(1, 2)
        assert qtilde((2, 1), 3) == elementary(2, 3) * elementary(1, 3) - 2 * elementary(3, 3)

    def test_repeated_pair_gives_squares(self):
        for n in (2, 3):
            for k in range(1, n + 1):
                assert qtilde((k, k), n) == elementary_squares(k, n)

    def test_pfaffian_expansion_three_rows(self):
        lhs = qtilde((3, 2, 1), 3)
        rhs = (
            qtilde((3, 2), 3) * qtilde((1,), 3)
            - qtilde((3, 1), 3) * qtilde((2,), 3)
            + qtilde((3,), 3) * qtilde((2, 1), 3)
        )
        assert lhs == rhs

    def test_vanishing_exactly_when_first_part_exceeds_rank(self):
        for n in (2, 3):
            for d in range(1, 7):
                for lam in weyl.partitions(d, 6):
                    f = qtilde(lam, n)
                    if lam.parts and lam.parts[0] > n:
                        assert f.is_zero(), (lam, n)
                    elif lam.is_strict():
                        assert not f.is_zero(), (lam, n)

    def test_linear_independence_per_degree(self):
        for n in (2, 3, 4):
            for d in range(1, 9):
                family = [
                    qtilde(lam, n)
                    for lam in weyl.strict_partitions(d, n)
                ]
                if family:
                    assert exact_rank(family) == len(family), (n, d)

    def test_pair_factorization(self):
        for n in (2, 3, 4):
            for lam in (Partition(()), Partition((1,)), Partition((2, 1)), Partition((3, 1))):
                for k in range(1, n + 1):
                    grown = lam.union_pair(k)
                    assert qtilde(grown, n) == qtilde((k, k), n) * qtilde(lam, n)

    def test_nonnegative_coefficients(self):
        for d in range(1, 7):
            for lam in weyl.strict_partitions(d, 3):
                assert all(c > 0 for c in qtilde(lam, 3).terms.values())

    def test_stability_under_restriction(self):
        for d in range(1, 6):
            for lam in weyl.strict_partitions(d, 3):
                assert qtilde(lam, 4).restrict(3) == qtilde(lam, 3)

    def test_homogeneous_of_weight(self):
        for lam in ((2, 1), (3, 2), (2, 2, 1)):
            f = qtilde(lam, 3)
            assert f.is_homogeneous()
            assert f.total_degree() == sum(lam)


class TestSchubertA:
    def test_identity_gives_one(self):
        assert schubert_a(perm(1, 2, 3)) == MultiPoly.one(3)
        assert schubert_a(perm(1)) == MultiPoly.one(1)

    def test_longest_gives_staircase(self):
        for n in (2, 3, 4):
            w = weyl.varpi0(n)
            expected = MultiPoly.one(n)
            for i in range(1, n):
                expected = expected * MultiPoly.x(i, n) ** (n - i)
            assert schubert_a(w) == expected

    def test_all_rank_three_values(self):
        x1, x2 = MultiPoly.x(1, 3), MultiPoly.x(2, 3)
        expected = {
            (1, 2, 3): MultiPoly.one(3),
            (2, 1, 3): x1,
            (1, 3, 2): x1 + x2,
            (3, 1, 2): x1**2,
            (2, 3, 1): x1 * x2,
            (3, 2, 1): x1**2 * x2,
        }
        for window, value in expected.items():
            assert schubert_a(perm(*window)) == value

    def test_stability(self):
        assert schubert_a(perm(2, 1)).extend(3) == schubert_a(perm(2, 1, 3))
        assert schubert_a(perm(1, 3, 2)).extend(4) == schubert_a(perm(1, 3, 2, 4))

    def test_nonnegative_coefficients(self):
        for w in weyl.s_n_elements(4):
            assert all(c > 0 for c in schubert_a(w).terms.values())

    def test_barred_input_rejected(self):
        with pytest.raises(ValueError):
            schubert_a(perm(-1, 2))


def brute_unimodal(row):
    i = 0
    while i + 1 < len(row) and row[i] > row[i + 1]:
        i += 1
    while i + 1 < len(row) and row[i] < row[i + 1]:
        i += 1
    return i == max(len(row) - 1, 0)


def brute_count(u, lam):
    """Oracle: enumerate every reduced word and test the row conditions."""
    lam = tuple(lam)
    if sum(lam) != u.length():
        return 0
    blocks = tuple(reversed(lam))
    count = 0
    for word in weyl.reduced_words(u):
        pos = 0
        ok = True
        for b in blocks:
            row = word[pos : pos + b]
            pos += b
            if not brute_unimodal(row) or max_unimodal_length(word[:pos]) != b:
                ok = False
                break
        if ok:
            count += 1
    return count


class TestKraskiewiczCount:
    def test_simplest(self):
        assert kraskiewicz_count(weyl.simple(0, 1), (1,)) == 1
        assert kraskiewicz_count(weyl.identity(2), ()) == 1

    def test_frozen_rank_three(self):
        u = perm(1, -2, 3)
        assert kraskiewicz_count(u, (3,)) == 1
        assert kraskiewicz_count(u, (2, 1)) == 0

    def test_weight_mismatch_gives_zero(self):
        assert kraskiewicz_count(perm(1, -2, 3), (2,)) == 0

    def test_non_strict_shape_rejected(self):
        with pytest.raises(ValueError):
            kraskiewicz_count(perm(-2, -1), (2, 2))

    def test_grassmannian_elements_have_unique_tableau(self):
        for n in (2, 3):
            for d in range(1, n * (n + 1) // 2 + 1):
                for lam in weyl.strict_partitions(d, n):
                    w = weyl.max_grassmannian(lam, n)
                    for mu in weyl.strict_partitions(d, 2 * n - 1):
                        expected = 1 if mu == lam else 0
                        assert kraskiewicz_count(w, mu) == expected, (lam, mu)

    def test_against_brute_force(self):
        for w in weyl.all_elements(2):
            for lam in weyl.strict_partitions(w.length(), 3):
                assert kraskiewicz_count(w, lam) == brute_count(w, lam), (w, lam)
        for w in weyl.all_elements(3):
            if w.length() > 5:
                continue
            for lam in weyl.strict_partitions(w.length(), 5):
                assert kraskiewicz_count(w, lam) == brute_count(w, lam), (w, lam)

    def test_every_element_has_a_tableau(self):
        for w in weyl.all_elements(3):
            total = sum(
                kraskiewicz_count(w, lam)
                for lam in weyl.strict_partitions(w.length(), 5)
            )
            assert total >= 1, w


class TestBHCoefficients:
    def test_identity(self):
        assert bh_coefficients(weyl.identity(3)) == {
            (Partition(()), perm(1, 2, 3)): 1
        }

    def test_frozen_321(self):
        got = bh_coefficients(perm(3, 2, 1))
        expected = {
            (Partition((3,)), perm(1, 2, 3)): 1,
            (Partition((2, 1)), perm(1, 2, 3)): 1,
            (Partition((2,)), perm(2, 1, 3)): 1,
            (Partition((2,)), perm(1, 3, 2)): 1,
            (Partition((1,)), perm(3, 1, 2)): 1,
            (Partition((1,)), perm(2, 3, 1)): 1,
            (Partition(()), perm(3, 2, 1)): 1,
        }
        assert got == expected

    def test_longest_element_full_map(self):
        # six factorizations survive; the identity one sits at the
        # staircase shape (5,3,1), whose first part exceeds the rank
        got = bh_coefficients(weyl.longest(3))
        expected = {
            (Partition((5, 3, 1)), perm(1, 2, 3)): 1,
            (Partition((5, 2, 1)), perm(2, 1, 3)): 1,
            (Partition((4, 3, 1)), perm(1, 3, 2)): 1,
            (Partition((4, 2, 1)), perm(2, 3, 1)): 1,
            (Partition((4, 2, 1)), perm(3, 1, 2)): 1,
            (Partition((3, 2, 1)), perm(3, 2, 1)): 1,
        }
        assert got == expected

    def test_longest_element_within_rank_bound(self):
        got = bh_coefficients(weyl.longest(3))
        small = {k: v for k, v in got.items() if k[0].parts and k[0].parts[0] <= 3}
        assert small == {(Partition((3, 2, 1)), perm(3, 2, 1)): 1}

    def test_last_entry_barred(self):
        got = bh_coefficients(perm(1, 2, -3))
        assert got[(Partition((5,)), perm(1, 2, 3))] == 1
        small = {k: v for k, v in got.items() if k[0].parts and k[0].parts[0] <= 3}
        assert small == {(Partition((3,)), perm(2, 3, 1)): 1}

    def test_keys_satisfy_length_bookkeeping(self):
        for w in weyl.all_elements(3):
            if w.length() > 6:
                continue
            for (lam, varpi), e in bh_coefficients(w).items():
                assert e > 0
                assert lam.is_strict()
                rem = w.length() - varpi.length()
                assert lam.weight() == rem
                assert (w * varpi.inverse()).length() == rem
