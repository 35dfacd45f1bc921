from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

from chinos import semiclassical
from chinos.semiclassical import (
    averaged_distribution,
    averaged_table,
    best_guess,
    classical_mix,
    joint_distribution,
    outcome_table,
    strategy_payoff_p1,
    uniform_mix,
)

F = Fraction

# Golden 4x4 grid of outcome distributions over totals {0, 1, 2},
# keyed (first player's draw, second player's draw).
GOLDEN_TABLE = {
    (1, 1): (1, 0, 0),
    (1, 2): (F(1, 2), F(1, 2), 0),
    (1, 3): (F(1, 2), F(1, 2), 0),
    (1, 4): (0, 1, 0),
    (2, 2): (F(1, 7), F(4, 7), F(2, 7)),
    (2, 3): (F(1, 3), 0, F(2, 3)),
    (2, 4): (0, F(1, 3), F(2, 3)),
    (3, 3): (F(1, 7), F(4, 7), F(2, 7)),
    (3, 4): (0, F(1, 3), F(2, 3)),
    (4, 4): (0, 0, 1),
}

GOLDEN_AVERAGES = {
    1: (F(1, 2), F(1, 2), 0),
    2: (F(41, 168), F(59, 168), F(68, 168)),
    3: (F(41, 168), F(59, 168), F(68, 168)),
    4: (0, F(5, 12), F(7, 12)),
}

mixes = st.lists(
    st.fractions(min_value=0, max_value=1, max_denominator=8), min_size=4, max_size=4
).filter(lambda m: sum(m) > 0).map(lambda m: tuple(w / sum(m) for w in m))


class TestOutcomeTable:
    def test_all_sixteen_cells_exact(self):
        for (i, j), want in GOLDEN_TABLE.items():
            assert joint_distribution(i, j) == want
            assert joint_distribution(j, i) == want

    def test_transposition_symmetry(self):
        table = outcome_table()
        for i in (1, 2, 3, 4):
            for j in (1, 2, 3, 4):
                assert table[(i, j)] == table[(j, i)]

    def test_cells_are_distributions(self):
        for dist in outcome_table().values():
            assert sum(dist) == 1
            assert all(p >= 0 for p in dist)

    def test_index_validation(self):
        with pytest.raises(ValueError):
            joint_distribution(0, 2)


class TestAveragedTable:
    def test_uniform_averages_exact(self):
        for own, want in GOLDEN_AVERAGES.items():
            assert averaged_distribution(own, uniform_mix()) == want
        assert averaged_table() == GOLDEN_AVERAGES

    def test_point_mass_reduces_to_cell(self):
        point = (F(1), F(0), F(0), F(0))
        assert averaged_distribution(1, point) == joint_distribution(1, 1)

    @given(mixes, mixes)
    def test_affine_in_opponent_mix(self, m1, m2):
        lam = F(1, 3)
        blend = tuple(lam * a + (1 - lam) * b for a, b in zip(m1, m2))
        for own in (1, 2, 3, 4):
            left = averaged_distribution(own, blend)
            a = averaged_distribution(own, m1)
            b = averaged_distribution(own, m2)
            assert left == tuple(lam * x + (1 - lam) * y for x, y in zip(a, b))

    def test_mix_validation(self):
        with pytest.raises(ValueError):
            averaged_distribution(2, (F(1, 2), F(1, 2), F(1, 2), F(-1, 2)))


class TestBestGuess:
    def test_identity_draw_ties_zero_and_one(self):
        result = best_guess(1, uniform_mix())
        assert result.win_prob == F(1, 2)
        assert result.tied_alternatives == {0, 1}
        assert result.guess == 0  # canonical smallest

    def test_superposition_draw_guesses_two(self):
        result = best_guess(2, uniform_mix())
        assert result.guess == 2
        assert result.win_prob == F(68, 168)

    def test_certain_pair(self):
        point = (F(0), F(0), F(0), F(1))
        result = best_guess(4, point)
        assert result.guess == 2
        assert result.win_prob == 1
        assert result.tied_alternatives == {2}


class TestFirstGuessSuccess:
    def test_uniform_draws_lose_ground(self):
        value = strategy_payoff_p1(uniform_mix(), uniform_mix())
        assert value == F(53, 112)
        assert value < F(1, 2)

    def test_classical_draws_beat_uniform_opponent(self):
        value = strategy_payoff_p1(classical_mix(), uniform_mix())
        assert value == F(13, 24)
        assert value > F(1, 2)

    def test_classical_standoff_is_even(self):
        assert strategy_payoff_p1(classical_mix(), classical_mix()) == F(1, 2)

    def test_table_regeneration_from_state_algebra(self):
        # cross-check the averaged win probabilities against the raw grid
        for own in (1, 2, 3, 4):
            by_hand = [
                sum(F(1, 4) * joint_distribution(own, j)[n] for j in (1, 2, 3, 4))
                for n in range(3)
            ]
            assert best_guess(own, uniform_mix()).win_prob == max(by_hand)


class TestDrawMatrixGame:
    def test_zero_sum_and_shape(self):
        game = semiclassical.draw_matrix_game()
        assert game.shape == (4, 4)
        for i in range(4):
            for j in range(4):
                assert game.u1[i][j] + game.u2[i][j] == 0

    def test_payoffs_follow_frozen_guess_rule(self):
        game = semiclassical.draw_matrix_game()
        guesses = {d: best_guess(d, uniform_mix()).guess for d in (1, 2, 3, 4)}
        for i, d1 in enumerate((1, 2, 3, 4)):
            for j, d2 in enumerate((1, 2, 3, 4)):
                assert game.u1[i][j] == joint_distribution(d1, d2)[guesses[d1]]
