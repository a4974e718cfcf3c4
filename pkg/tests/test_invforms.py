"""Tests for the invariant-forms algebra.

Covers the wedge algebra, the structure equations and d^2 = 0, curvature
matrices and their Chern and power-sum forms, the dd^c operator with its
frozen rank-2 values, top-degree integration, and serialization.
"""

import math
from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from spflag.invforms import (
    CurvatureMatrix,
    InvForm,
    chern_forms,
    curvature_E,
    curvature_L,
    curvature_Q,
    d_form,
    ddc,
    integrate_top,
    omega_lower,
    omega_top,
    omega_upper,
    power_sum,
    wedge,
    x_form,
)
from spflag.invforms import _basis


def one(n, *sym):
    return InvForm.one_form(n, tuple(sym))


def generators(n):
    gens = []
    for i in range(1, n + 1):
        for j in range(i + 1, n + 1):
            gens.append(omega_lower(i, j, n))
    for p in range(1, n + 1):
        for q in range(p, n + 1):
            gens.append(omega_upper(p, q, n))
    return gens


@st.composite
def class_ready_forms(draw, n=2, max_terms=4):
    gens = generators(n)
    total = InvForm.zero(n)
    for _ in range(draw(st.integers(0, max_terms))):
        term = InvForm.constant(n, draw(st.integers(-5, 5)))
        for _ in range(draw(st.integers(1, 2))):
            term = term * draw(st.sampled_from(gens))
        total = total + term
    return total


class TestWedgeAlgebra:
    def test_repeated_factor_vanishes(self):
        o = omega_lower(1, 2, 2)
        assert (o * o).is_zero()

    def test_one_forms_anticommute(self):
        w = one(2, "w", 1, 2)
        wb = one(2, "wb", 1, 2)
        assert w.wedge(wb) == -(wb.wedge(w))
        assert w.wedge(w).is_zero()

    def test_even_degree_commutes(self):
        a = omega_lower(1, 2, 2)
        b = omega_upper(1, 1, 2)
        assert a * b == b * a

    def test_scalar_arithmetic(self):
        a = omega_upper(1, 2, 3)
        assert 2 * a - a == a
        assert (a - a).is_zero()
        assert Fraction(1, 2) * (2 * a) == a

    def test_wedge_power(self):
        a = omega_lower(1, 2, 2) + omega_upper(1, 1, 2)
        assert a ** 0 == InvForm.constant(2)
        assert a ** 2 == a * a

    def test_rank_mismatch_rejected(self):
        with pytest.raises(ValueError):
            wedge(omega_lower(1, 2, 2), omega_lower(1, 2, 3))

    def test_associativity(self):
        a, b, c = omega_lower(1, 2, 3), omega_upper(1, 3, 3), omega_upper(2, 2, 3)
        assert (a * b) * c == a * (b * c)

    @given(a=class_ready_forms(), b=class_ready_forms(), c=class_ready_forms())
    @settings(max_examples=40, deadline=None)
    def test_bilinearity(self, a, b, c):
        assert (a + b) * c == a * c + b * c


class TestStructureEquations:
    """Frozen rank-2 differentials of coframe symbols."""

    def test_d_root_one_form(self):
        dw = d_form(one(2, "w", 1, 2))
        expect = (
            one(2, "u", 1, 1) * one(2, "ub", 1, 2)
            + one(2, "u", 1, 2) * one(2, "ub", 2, 2)
            + one(2, "w", 1, 2) * one(2, "t", 1)
            - one(2, "w", 1, 2) * one(2, "t", 2)
        )
        assert dw == expect

    def test_d_symmetric_one_form(self):
        du = d_form(one(2, "u", 1, 2))
        expect = (
            one(2, "u", 1, 2) * one(2, "t", 1)
            + one(2, "u", 1, 2) * one(2, "t", 2)
            - one(2, "w", 1, 2) * one(2, "u", 2, 2)
            + one(2, "wb", 1, 2) * one(2, "u", 1, 1)
        )
        assert du == expect

    def test_d_vertical_one_form(self):
        dt = d_form(one(2, "t", 1))
        expect = (
            one(2, "w", 1, 2) * one(2, "wb", 1, 2)
            + one(2, "u", 1, 1) * one(2, "ub", 1, 1)
            + one(2, "u", 1, 2) * one(2, "ub", 1, 2)
        )
        assert dt == expect

    @pytest.mark.parametrize("n", [1, 2, 3])
    def test_d_squared_vanishes(self, n):
        for sym, _ in _basis(n):
            assert d_form(d_form(one(n, *sym))).is_zero()

    def test_leibniz_rule(self):
        a = one(2, "w", 1, 2)
        b = one(2, "u", 1, 2)
        assert d_form(a * b) == d_form(a) * b - a * d_form(b)

    def test_paired_two_forms_are_basic(self):
        exterior = d_form(omega_lower(1, 2, 2))
        for _, factors in exterior.terms:
            assert all(sym[0] != "t" for sym in factors)


class TestCurvature:
    def test_rank_one_entry(self):
        theta = curvature_E(1, 1)
        assert theta.size == 1
        assert theta.entries[0][0] == -omega_upper(1, 1, 1)
        assert theta.dual().trace() == omega_upper(1, 1, 1)

    def test_dual_negates_transpose(self):
        theta = curvature_E(2, 2)
        dual = theta.dual()
        assert dual.label == "E_2*"
        for a in range(2):
            for b in range(2):
                assert dual.entries[a][b] == -theta.entries[b][a]

    def test_diagonal_entry(self):
        theta = curvature_E(2, 2)
        assert theta.entries[0][0] == -(omega_upper(2, 2, 2) + omega_upper(1, 2, 2))

    def test_lagrangian_chern_forms(self):
        cs = chern_forms(curvature_E(2, 2).dual())
        assert cs[0] == InvForm.constant(2)
        assert cs[1].to_text() == "O^11 + 2*O^12 + O^22"
        assert cs[2].to_text() == "2*O^11*O^12 + O^11*O^22 + 2*O^12*O^22"
        assert cs[1] ** 2 == 2 * cs[2]
        o = omega_upper
        assert cs[1] * cs[2] == 6 * (o(1, 1, 2) * o(1, 2, 2) * o(2, 2, 2))

    def test_power_sums(self):
        dual = curvature_E(2, 2).dual()
        cs = chern_forms(dual)
        assert power_sum(dual, 0) == InvForm.constant(2, 2)
        assert power_sum(dual, 1) == cs[1]
        assert power_sum(dual, 2).is_zero()
        assert power_sum(dual, 3) == -(cs[1] * cs[2])

    @pytest.mark.parametrize("n", [1, 2])
    def test_chern_forms_closed(self, n):
        for k in range(1, n + 1):
            for c in chern_forms(curvature_E(k, n))[1:]:
                assert d_form(c).is_zero()

    def test_x_form_display(self):
        assert x_form(1, 2).to_text() == "-O_12 + O^11 + O^12"
        assert x_form(2, 2).to_text() == "O_12 + O^12 + O^22"
        assert x_form(1, 3).to_text() == "-O_12 - O_13 + O^11 + O^12 + O^13"
        assert x_form(3, 3).to_text() == "O_13 + O_23 + O^13 + O^23 + O^33"

    @pytest.mark.parametrize("n", [1, 2, 3])
    def test_x_forms_closed(self, n):
        for i in range(1, n + 1):
            assert d_form(x_form(i, n)).is_zero()

    @pytest.mark.parametrize("n", [1, 2, 3])
    def test_x_form_matches_line_curvature(self, n):
        for i in range(1, n + 1):
            assert x_form(i, n) == -curvature_L(i, n).trace()

    @pytest.mark.parametrize("n", [2, 3])
    def test_quotient_is_subbundle_difference(self, n):
        for k in range(1, n + 1):
            got = curvature_Q(k, n).trace()
            expect = curvature_E(k, n).trace()
            if k > 1:
                expect = expect - curvature_E(k - 1, n).trace()
            assert got == expect

    def test_index_range_checked(self):
        with pytest.raises(ValueError):
            curvature_E(3, 2)
        with pytest.raises(ValueError):
            curvature_Q(0, 2)


class TestDdc:
    def test_constant_is_killed(self):
        assert ddc(InvForm.constant(2, 7)).is_zero()

    def test_pinned_lower_value(self):
        o12 = omega_lower(1, 2, 2)
        u11 = omega_upper(1, 1, 2)
        u12 = omega_upper(1, 2, 2)
        u22 = omega_upper(2, 2, 2)
        assert ddc(o12) == o12 * (u22 - u11) + u12 * (u11 + u22)

    def test_pinned_upper_values(self):
        o12 = omega_lower(1, 2, 2)
        u11 = omega_upper(1, 1, 2)
        u12 = omega_upper(1, 2, 2)
        u22 = omega_upper(2, 2, 2)
        assert ddc(u11) == -2 * o12 * u11 + 2 * u12 * u11 + 4 * o12 * u12
        assert ddc(u12) == (
            u12 * (u22 - u11) + o12 * (u11 + u22) - 4 * o12 * u12
        )
        assert ddc(u22) == 4 * o12 * u12 - 2 * u22 * u12 - 2 * o12 * u22

    def test_lower_value_against_its_own_multiple(self):
        # the terms of ddc(O_12) proportional to O_12 die against O_12
        o12 = omega_lower(1, 2, 2)
        u11 = omega_upper(1, 1, 2)
        u12 = omega_upper(1, 2, 2)
        u22 = omega_upper(2, 2, 2)
        assert ddc(o12) * o12 == u12 * (u11 + u22) * o12

    @pytest.mark.parametrize("n", [2, 3])
    def test_quotient_chern_forms_are_ddc_closed(self, n):
        for k in range(1, n + 1):
            assert ddc(curvature_Q(k, n).trace()).is_zero()

    def test_second_chern_identity(self):
        # -ddc(O_12) recovers x1*x2 minus the degree-2 invariant of the
        # dual Lagrangian bundle
        xi2 = chern_forms(curvature_E(2, 2).dual())[2]
        lhs = -ddc(omega_lower(1, 2, 2))
        assert lhs == x_form(1, 2) * x_form(2, 2) - xi2

    def test_result_stays_class_ready(self):
        a = omega_lower(1, 2, 2) + 3 * omega_upper(1, 2, 2)
        assert ddc(a).is_class_ready()

    @given(a=class_ready_forms(), b=class_ready_forms())
    @settings(max_examples=25, deadline=None)
    def test_linearity(self, a, b):
        assert ddc(a + b) == ddc(a) + ddc(b)

    def test_vertical_input_rejected(self):
        bad = one(2, "t", 1) * one(2, "wb", 1, 2)
        with pytest.raises(ValueError):
            ddc(bad)

    def test_unbalanced_type_rejected(self):
        with pytest.raises(ValueError):
            ddc(one(2, "w", 1, 2))

    def test_rank_mismatch_rejected(self):
        with pytest.raises(ValueError):
            ddc(omega_lower(1, 2, 2), n=3)


class TestIntegration:
    def test_volume_normalization(self):
        assert integrate_top(omega_top(2)) == Fraction(1, 6)
        assert integrate_top(omega_top(3)) == Fraction(1, 720)

    def test_zero_and_scaling(self):
        assert integrate_top(InvForm.zero(2), n=2) == 0
        assert integrate_top(5 * omega_top(2)) == Fraction(5, 6)
        assert integrate_top(Fraction(-3, 2) * omega_top(2)) == Fraction(-1, 4)

    def test_non_top_input_rejected(self):
        with pytest.raises(ValueError):
            integrate_top(omega_lower(1, 2, 2))
        with pytest.raises(ValueError):
            integrate_top(InvForm.constant(2))

    @pytest.mark.parametrize("n", [2, 3])
    def test_quotient_line_product(self, n):
        prod = InvForm.constant(n)
        for k in range(1, n + 1):
            c1 = curvature_Q(k, n).dual().trace()
            prod = prod * c1 ** (2 * n - 2 * k + 1)
        scale = math.prod(math.factorial(2 * k - 1) for k in range(1, n + 1))
        assert prod == scale * omega_top(n)
        assert integrate_top(prod) == 1


class TestSerialization:
    def test_text_basics(self):
        assert InvForm.zero(2).to_text() == "0"
        assert InvForm.constant(2, 3).to_text() == "3"
        assert InvForm.constant(2, Fraction(-7, 2)).to_text() == "-7/2"
        xi1 = chern_forms(curvature_E(2, 2).dual())[1]
        assert xi1.to_text() == "O^11 + 2*O^12 + O^22"

    def test_text_raw_fallback(self):
        w = one(2, "w", 1, 2)
        assert w.to_text() == "W_12"
        assert (-one(2, "t", 2)).to_text() == "-T_1"

    def test_json_frozen(self):
        f = 3 * omega_lower(1, 2, 2) - Fraction(1, 2) * omega_upper(2, 2, 2)
        assert f.to_json() == [
            {"monomial": ["O_12"], "coeff": "3"},
            {"monomial": ["O^22"], "coeff": "-1/2"},
        ]

    def test_json_rejects_unpaired(self):
        raw = one(2, "w", 1, 2) * one(2, "ub", 1, 2)
        with pytest.raises(ValueError):
            raw.to_json()
        mixed = InvForm(2, {(2, (("w", 1, 2), ("ub", 1, 2))): 1})
        with pytest.raises(ValueError):
            mixed.to_json()

    def test_json_rejects_unknown_token(self):
        with pytest.raises(ValueError):
            InvForm.from_json([{"monomial": ["X_12"], "coeff": "1"}], 2)

    @given(f=class_ready_forms(n=2))
    @settings(max_examples=40, deadline=None)
    def test_json_round_trip(self, f):
        assert InvForm.from_json(f.to_json(), 2) == f

    def test_round_trip_includes_volume(self):
        f = omega_top(3) + 4 * omega_lower(2, 3, 3)
        assert InvForm.from_json(f.to_json(), 3) == f
