import math
from fractions import Fraction
from itertools import product

import pytest

from chinos import quantum, semiclassical
from chinos.fock import (
    bloch_operator,
    born_distribution,
    fidelity,
    norm_squared,
    overlap,
    pair_state,
    product_state,
)
from chinos.quantum import (
    FIRST_CALLER_PAIRS,
    ORDERED_PAIRS,
    admissible_guesses,
    exhaustive_analysis,
    gain,
    gram_metric,
    payoff_table_for_guess,
    quantum_guess,
    winning_strategy_payoff,
)

F = Fraction

BLOCH_ANGLES = {1: (0.0, 0.0), 2: (math.pi / 2, 0.0), 3: (math.pi / 2, math.pi), 4: (math.pi, 0.0)}


class TestGramMetric:
    def test_winning_guess_orthogonal_to_reply(self):
        metric = gram_metric()
        assert metric.is_orthogonal((2, 2), (3, 4))
        assert metric.overlap_sq((2, 2), (3, 4)) == 0

    def test_vacuum_vs_two_particle_sector(self):
        assert gram_metric().is_orthogonal((1, 1), (4, 4))

    def test_unit_diagonal(self):
        metric = gram_metric()
        for pair in ORDERED_PAIRS:
            assert metric.overlap_sq(pair, pair) == 1

    def test_conjugate_symmetry_and_bound(self):
        metric = gram_metric()
        for p1 in ORDERED_PAIRS:
            for p2 in ORDERED_PAIRS:
                assert metric.overlap_sq(p1, p2) == metric.overlap_sq(p2, p1)
                assert metric.overlap_sq(p1, p2) <= 1

    def test_states_nonzero_for_all_ordered_pairs(self):
        for j, k in ORDERED_PAIRS:
            guess = quantum_guess(j, k)
            assert not guess.state.is_zero
            assert guess.norm_sq > 0


class TestAdmissibility:
    def test_replies_to_the_winning_guess(self):
        admissible = admissible_guesses([(2, 2)])
        assert (3, 4) in admissible
        assert (4, 3) in admissible
        assert (2, 2) not in admissible

    def test_exactly_the_orthogonal_set_after_vacuum_guess(self):
        # brute force: <0|O_j O_k|0> is the product of the identity parts,
        # so the orthogonal complement of the vacuum is "contains O4"
        expected = frozenset(p for p in ORDERED_PAIRS if 4 in p)
        assert admissible_guesses([(1, 1)]) == expected

    def test_symmetric_orthogonality(self):
        for p1 in ORDERED_PAIRS:
            for p2 in ORDERED_PAIRS:
                assert (p2 in admissible_guesses([p1])) == (p1 in admissible_guesses([p2]))

    def test_multiple_priors_intersect(self):
        both = admissible_guesses([(2, 2), (1, 1)])
        assert both == admissible_guesses([(2, 2)]) & admissible_guesses([(1, 1)])

    def test_every_first_caller_guess_leaves_a_reply(self):
        for pair in FIRST_CALLER_PAIRS:
            assert admissible_guesses([pair])

    def test_empty_prior_rejected(self):
        with pytest.raises(ValueError):
            admissible_guesses([])


class TestFidelityTables:
    def test_winning_guess_row(self):
        table = payoff_table_for_guess((2, 2), 2)
        assert table == {1: F(9, 14), 2: F(1, 1), 3: F(1, 21), 4: F(16, 21)}

    def test_mirror_row_by_exchange_symmetry(self):
        table = payoff_table_for_guess((3, 3), 3)
        assert table == {1: F(9, 14), 3: F(1, 1), 2: F(1, 21), 4: F(16, 21)}

    def test_vacuum_cell(self):
        assert gain((1, 1), 1, 1) == 1

    def test_fidelity_one_iff_proportional_states(self):
        for (j1, k1), (j2, k2) in product(ORDERED_PAIRS, repeat=2):
            a, b = pair_state(j1, k1), pair_state(j2, k2)
            f = fidelity(a, b)
            # exact proportionality check of the coefficient sequences
            cross_equal = len(a.coeffs) == len(b.coeffs) and all(
                a.coeffs[m] * b.coeffs[n] == a.coeffs[n] * b.coeffs[m]
                for m in range(len(a.coeffs))
                for n in range(len(b.coeffs))
            )
            assert (f == 1) == cross_equal

    def test_all_payoffs_within_unit_interval(self):
        for pair in FIRST_CALLER_PAIRS:
            for d1 in (1, 2, 3, 4):
                for f in payoff_table_for_guess(pair, d1).values():
                    assert 0 <= f <= 1


class TestWinningStrategy:
    def test_guaranteed_edge_value(self):
        assert winning_strategy_payoff() == F(11, 21)

    def test_point_mass_opponents(self):
        assert winning_strategy_payoff([1, 0, 0, 0]) == F(9, 14)
        assert winning_strategy_payoff([0, 0, 0, 1]) == F(16, 21)

    def test_exchange_symmetry_leaves_value_invariant(self):
        # swap roles of O2 and O3 everywhere: the averaged value is unchanged
        swapped = {2: 3, 3: 2, 1: 1, 4: 4}
        value = F(0)
        for d1, w in quantum.WINNING_DRAW_MIX.items():
            g = quantum.WINNING_GUESS[d1]
            sg = (swapped[g[0]], swapped[g[1]])
            for d2 in (2, 3):
                value += w * F(1, 2) * gain(sg, swapped[d1], swapped[d2])
        assert value == F(11, 21)

    def test_mix_validation(self):
        with pytest.raises(ValueError):
            winning_strategy_payoff([1, 1, 0, 0])


class TestExhaustiveAnalysis:
    def test_guaranteed_value_via_brute_force_mix_grid(self):
        report = exhaustive_analysis()
        by_draw = report.edge_gain_by_opponent_draw
        assert by_draw == {1: F(9, 14), 2: F(11, 21), 3: F(11, 21), 4: F(16, 21)}
        # oracle: scan every opponent mix with denominator <= 6 on the
        # 3-simplex and take the minimum of the expected gain
        best = None
        q = 6
        for w1 in range(q + 1):
            for w2 in range(q + 1 - w1):
                for w3 in range(q + 1 - w1 - w2):
                    w4 = q - w1 - w2 - w3
                    mix = (F(w1, q), F(w2, q), F(w3, q), F(w4, q))
                    value = sum(
                        (w * by_draw[d] for d, w in zip((1, 2, 3, 4), mix)), F(0)
                    )
                    best = value if best is None else min(best, value)
        assert report.guaranteed_value == best == F(11, 21)
        assert report.guaranteed_value > F(1, 2)
        assert report.symmetry_broken

    def test_opponent_minimizing_draws(self):
        report = exhaustive_analysis()
        assert report.edge_minimizing_draws == {2, 3}

    def test_classical_embedding_reproduces_measured_totals(self):
        # pairs whose state is a pure number state act as classical calls:
        # the fidelity equals the Born probability of that total
        number_pairs = {0: (1, 1), 1: (1, 4), 2: (4, 4)}
        for total, pair in number_pairs.items():
            for d1 in (1, 2, 3, 4):
                for d2 in (1, 2, 3, 4):
                    dist = semiclassical.joint_distribution(d1, d2)
                    assert gain(pair, d1, d2) == dist[total]

    def test_profile_enumeration_is_complete_and_admissible(self):
        report = exhaustive_analysis()
        seen = set()
        for row in report.profiles:
            assert row.guess1 in FIRST_CALLER_PAIRS
            assert row.guess2 in admissible_guesses([row.guess1])
            assert 0 <= row.f1 <= 1 and 0 <= row.f2 <= 1
            seen.add((row.draw1, row.guess1))
        assert seen == {(d, g) for d in (1, 2, 3, 4) for g in FIRST_CALLER_PAIRS}

    def test_responder_table_consistency(self):
        report = exhaustive_analysis()
        entry = report.responder_replies[(2, (2, 2))]
        assert entry.f1_by_draw2 == {1: F(9, 14), 2: F(1, 1), 3: F(1, 21), 4: F(16, 21)}
        assert entry.f1_minimizing_draws == {3}
        # the best reply's gain is attained by an enumerated profile
        assert all(
            gain(g2, 2, d2) == entry.f2_best for d2, g2 in entry.f2_best_replies
        )

    def test_first_caller_best_vs_uniform(self):
        report = exhaustive_analysis()
        strategies, value = report.first_caller_best_vs_uniform
        assert set(strategies) == {(2, (2, 2)), (3, (3, 3))}
        assert value == F(103, 168)
        # it must dominate the edge strategy's value against uniform
        edge_vs_uniform = sum(
            (F(1, 4) * v for v in report.edge_gain_by_opponent_draw.values()), F(0)
        )
        assert value >= edge_vs_uniform


class TestBackendAgreement:
    def test_fidelity_table_within_1e12_of_float_route(self):
        exact_table = payoff_table_for_guess((2, 2), 2)
        guess_f = product_state([bloch_operator(*BLOCH_ANGLES[2])] * 2)
        for d2, exact in exact_table.items():
            joint_f = product_state(
                [bloch_operator(*BLOCH_ANGLES[2]), bloch_operator(*BLOCH_ANGLES[d2])]
            )
            assert abs(fidelity(guess_f, joint_f) - float(exact)) < 1e-12

    def test_gram_entries_match_float_route(self):
        metric = gram_metric()
        for p1 in ORDERED_PAIRS:
            s1 = product_state([bloch_operator(*BLOCH_ANGLES[p1[0]]), bloch_operator(*BLOCH_ANGLES[p1[1]])])
            for p2 in ORDERED_PAIRS:
                s2 = product_state([bloch_operator(*BLOCH_ANGLES[p2[0]]), bloch_operator(*BLOCH_ANGLES[p2[1]])])
                g_float = overlap(s1, s2).real / math.sqrt(
                    norm_squared(s1) * norm_squared(s2)
                )
                assert abs(g_float - metric.entry_float(p1, p2)) < 1e-12


class TestReportRendering:
    def test_json_has_certified_fields(self):
        payload = exhaustive_analysis().to_json()
        assert payload["guaranteed_value"] == "11/21"
        assert payload["edge_strategy"]["f1_minimizing_draws"] == ["O2", "O3"]
        assert payload["symmetry_broken"] is True

    def test_profiles_included_on_request(self):
        payload = exhaustive_analysis().to_json(include_profiles=True)
        assert len(payload["profiles"]) == len(exhaustive_analysis().profiles)
