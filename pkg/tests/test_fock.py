import math
from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

from chinos.fock import (
    VACUUM,
    DrawOperator,
    FockPoly,
    apply_draw,
    bloch_operator,
    born_distribution,
    fidelity,
    norm_squared,
    number_amplitudes,
    overlap,
    pair_state,
    product_state,
    reduced_operator,
)
from chinos.scalars import INV_SQRT2, QuadScalar

O1, O2, O3, O4 = (reduced_operator(i) for i in (1, 2, 3, 4))

# Angles reproducing O1..O4 in the float backend.
BLOCH_ANGLES = {1: (0.0, 0.0), 2: (math.pi / 2, 0.0), 3: (math.pi / 2, math.pi), 4: (math.pi, 0.0)}

rationals = st.fractions(min_value=-9, max_value=9, max_denominator=12)
quads = st.builds(QuadScalar, rationals, rationals)
states = (
    st.lists(quads, min_size=1, max_size=5)
    .map(FockPoly.from_coeffs)
    .filter(lambda p: not p.is_zero)
)


def poly(*coeffs) -> FockPoly:
    return FockPoly.from_coeffs(coeffs)


class TestApplyDraw:
    def test_creation_on_vacuum(self):
        assert apply_draw(O4, VACUUM).coeffs == poly(0, 1).coeffs

    def test_double_superposition_draw(self):
        state = apply_draw(O2, apply_draw(O2, VACUUM))
        assert state.coeffs == poly(Fraction(1, 2), 1, Fraction(1, 2)).coeffs

    def test_opposite_superpositions_cancel_middle(self):
        state = apply_draw(O3, apply_draw(O2, VACUUM))
        assert state.coeffs == poly(Fraction(1, 2), 0, Fraction(-1, 2)).coeffs
        assert born_distribution(state) == (Fraction(1, 3), 0, Fraction(2, 3))

    def test_degree_grows_with_creation_part(self):
        state = apply_draw(O2, VACUUM)
        assert state.degree == VACUUM.degree + 1
        assert apply_draw(O1, state).degree == state.degree

    def test_zero_state_rejected(self):
        with pytest.raises(ValueError):
            apply_draw(O2, FockPoly.from_coeffs([0]))

    @given(states)
    def test_bilinear_in_operator_coefficients(self, state):
        alpha, beta = INV_SQRT2, -INV_SQRT2
        combined = apply_draw(DrawOperator(alpha, beta), state)
        id_part = apply_draw(DrawOperator(QuadScalar(1), QuadScalar(0)), state)
        cr_part = apply_draw(DrawOperator(QuadScalar(0), QuadScalar(1)), state)
        n = len(combined.coeffs)
        lhs = list(combined.coeffs) + [QuadScalar(0)] * (3 + n)
        for i in range(n):
            a = id_part.coeffs[i] if i < len(id_part.coeffs) else QuadScalar(0)
            b = cr_part.coeffs[i] if i < len(cr_part.coeffs) else QuadScalar(0)
            assert lhs[i] == alpha * a + beta * b

    def test_reduced_draws_commute(self):
        for i in (1, 2, 3, 4):
            for j in (1, 2, 3, 4):
                assert product_state([reduced_operator(i), reduced_operator(j)]) == pair_state(
                    j, i
                )


class TestOverlapAndNorms:
    def test_distinct_number_sectors(self):
        assert not overlap(poly(1, 0, 0), poly(0, 0, 1))

    def test_self_overlap_with_factorial_weights(self):
        s = poly(Fraction(1, 2), 1, Fraction(1, 2))
        assert overlap(s, s) == Fraction(7, 4)
        assert norm_squared(s) == Fraction(7, 4)

    def test_orthogonal_guess_pair(self):
        s = poly(Fraction(1, 2), 1, Fraction(1, 2))
        t = poly(0, INV_SQRT2, -INV_SQRT2)
        assert not overlap(s, t)
        assert norm_squared(t) == Fraction(3, 2)

    def test_vacuum_norm(self):
        assert norm_squared(VACUUM) == 1

    @given(states, states)
    def test_cauchy_schwarz(self, p, q):
        ov = overlap(p, q)
        assert ov * ov <= norm_squared(p) * norm_squared(q)


class TestBornRule:
    def test_double_superposition_cell(self):
        assert born_distribution(poly(Fraction(1, 2), 1, Fraction(1, 2))) == (
            Fraction(1, 7),
            Fraction(4, 7),
            Fraction(2, 7),
        )

    def test_vacuum_is_certain(self):
        assert born_distribution(VACUUM) == (1,)

    def test_zero_state_rejected(self):
        with pytest.raises(ValueError):
            born_distribution(FockPoly.from_coeffs([]))

    @given(states)
    def test_sums_to_exactly_one(self, p):
        dist = born_distribution(p)
        assert sum(dist, QuadScalar(0)) == 1
        assert all(x >= 0 for x in dist)

    def test_float_backend_sums_within_tolerance(self):
        state = product_state([bloch_operator(1.1, 0.3), bloch_operator(2.0, 4.5)])
        dist = born_distribution(state)
        assert abs(sum(dist) - 1.0) < 1e-12
        assert all(x >= -1e-15 for x in dist)


class TestFidelity:
    def test_perfect_match(self):
        s = poly(Fraction(1, 2), 1, Fraction(1, 2))
        assert fidelity(s, s) == 1

    def test_near_orthogonal_joint(self):
        s = poly(Fraction(1, 2), 1, Fraction(1, 2))
        assert fidelity(s, poly(Fraction(1, 2), 0, Fraction(-1, 2))) == Fraction(1, 21)

    def test_scale_invariance_and_single_coin_joint(self):
        s = poly(Fraction(1, 2), 1, Fraction(1, 2))
        assert fidelity(s, poly(1, 1)) == Fraction(9, 14)
        assert fidelity(s, poly(INV_SQRT2, INV_SQRT2)) == Fraction(9, 14)

    def test_zero_state_rejected(self):
        with pytest.raises(ValueError):
            fidelity(FockPoly.from_coeffs([]), VACUUM)

    @given(states, states)
    def test_range(self, p, q):
        f = fidelity(p, q)
        assert 0 <= f <= 1


class TestBlochOperators:
    def test_identity_limit(self):
        op = bloch_operator(0.0, 0.0)
        assert op.alpha == 1 and op.beta == 0

    def test_creation_limit(self):
        op = bloch_operator(math.pi, 0.0)
        assert abs(op.alpha) < 1e-15
        assert abs(op.beta - 1) < 1e-15

    def test_equal_superposition(self):
        op = bloch_operator(math.pi / 2, 0.0)
        assert abs(op.alpha - 1 / math.sqrt(2)) < 1e-15
        assert abs(op.beta - 1 / math.sqrt(2)) < 1e-15

    def test_rejects_non_finite(self):
        with pytest.raises((ValueError, OverflowError)):
            bloch_operator(float("nan"), 0.0)


class TestBackendAgreement:
    def test_all_joint_distributions_within_1e12(self):
        for i in (1, 2, 3, 4):
            for j in (1, 2, 3, 4):
                exact = born_distribution(pair_state(i, j))
                float_state = product_state(
                    [bloch_operator(*BLOCH_ANGLES[i]), bloch_operator(*BLOCH_ANGLES[j])]
                )
                approx = born_distribution(float_state)
                for n in range(3):
                    e = float(exact[n]) if n < len(exact) else 0.0
                    a = approx[n] if n < len(approx) else 0.0
                    assert abs(e - a) < 1e-12


class TestRendering:
    def test_number_amplitudes_match_known_normalization(self):
        s = poly(Fraction(1, 2), 1, Fraction(1, 2))
        amps = number_amplitudes(s)
        expected = [1 / math.sqrt(7), 2 / math.sqrt(7), math.sqrt(2 / 7)]
        assert amps == pytest.approx(expected, rel=1e-14)

    def test_operator_validation(self):
        with pytest.raises(ValueError):
            DrawOperator(QuadScalar(0), QuadScalar(0))
