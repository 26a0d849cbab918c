import random
from fractions import Fraction as F
from math import comb

import pytest

from persuasion import (
    GameSpec,
    PureProfile,
    SizeLimitExceeded,
    Signal,
    brute_force_best_deviation,
    brute_force_optimal_signal,
    check_equilibrium,
    enumerate_deterministic_signals,
    full_info_signal,
    grid_signals,
    optimal_signal,
    profile_payoffs,
)
from persuasion.oracle import BOUND_ENV, DEFAULT_BOUND, GridSpec, default_bound, lattice_rows
from persuasion.sampling import small_game

from conftest import pooling_signal


def two_pair_game():
    return GameSpec(
        (("a",), ("b",)),
        ("r", "s"),
        ("x", "y"),
        {(0, 0, 0): F(1, 2), (0, 0, 1): F(1, 2)},
        (((1,), (0,)), ((1,), (0,))),
        ((1, 0), (0, 1)),
    )


class TestEnumeration:
    def test_two_pairs_two_actions(self):
        assert len(list(enumerate_deterministic_signals(two_pair_game(), 0))) == 4

    def test_ecig_count(self, ecig_game):
        signals = list(enumerate_deterministic_signals(ecig_game, 0))
        assert len(signals) == 16 == len(set(signals))
        assert full_info_signal(ecig_game, 0) in signals

    def test_k1_is_deterministic(self, ecig_game):
        assert list(grid_signals(ecig_game, 0, 1)) == list(enumerate_deterministic_signals(ecig_game, 0))

    def test_one_pair_k2(self):
        game = GameSpec((("a",), ("b",)), ("r",), ("x", "y"), {(0, 0, 0): F(1)}, (((1,), (0,)),) * 2, ((1,), (0,)))
        assert [s.rows[(0, 0)] for s in grid_signals(game, 0, 2)] == [(1, 0), (F(1, 2), F(1, 2)), (0, 1)]

    @pytest.mark.parametrize("K,m", [(1, 2), (2, 3), (4, 2), (3, 3), (5, 4)])
    def test_lattice_rows(self, K, m):
        rows = lattice_rows(m, K)
        assert len(rows) == comb(K + m - 1, m - 1) == GridSpec(K, 1, m).row_count
        assert len(set(rows)) == len(rows)
        assert all(sum(r) == 1 and all((x * K).denominator == 1 for x in r) for r in rows)

    def test_count_formula(self, ecig_game):
        assert GridSpec(3, 4, 2).count == 4**4
        assert len(list(grid_signals(ecig_game, 0, 3))) == 256

    def test_grids_nest(self, ecig_game):
        assert set(grid_signals(ecig_game, 0, 2)) <= set(grid_signals(ecig_game, 0, 4))

    def test_bound(self, ecig_game):
        with pytest.raises(SizeLimitExceeded) as info:
            list(grid_signals(ecig_game, 0, 10, bound=1000))
        assert (info.value.count, info.value.bound) == (14641, 1000)

    def test_bound_from_environment(self, monkeypatch, ecig_game):
        assert default_bound() == DEFAULT_BOUND
        monkeypatch.setenv(BOUND_ENV, "10")
        with pytest.raises(SizeLimitExceeded):
            list(enumerate_deterministic_signals(ecig_game, 0))

    def test_resolution_positive(self):
        with pytest.raises(ValueError):
            GridSpec(0, 1, 2)


class TestBruteForceOptimum:
    @pytest.mark.parametrize("K", [3, 6])
    def test_ecig_reaches_lp_value_when_thirds_fit(self, ecig_game, K):
        _, value = brute_force_optimal_signal(ecig_game, 0, K)
        assert value == F(9, 10)

    def test_ecig_tenths_grid(self, ecig_game):
        # the optimum needs P(impose|U,O) - P(impose|H,Y) = 2/3, impossible in tenths
        pi, value = brute_force_optimal_signal(ecig_game, 0, 10)
        assert value == F(22, 25) < optimal_signal(ecig_game, 0)[1]

    @pytest.mark.parametrize("seed", range(8))
    def test_k1_below_lp(self, seed):
        game = small_game(random.Random(seed))
        assert brute_force_optimal_signal(game, 1, 1)[1] <= optimal_signal(game, 1)[1]

    @pytest.mark.parametrize("seed", range(8))
    def test_monotone_in_k(self, seed):
        game = small_game(random.Random(seed))
        values = [brute_force_optimal_signal(game, 0, K)[1] for K in (1, 2, 4)]
        assert values == sorted(values)

    def test_aligned_game_full_info_wins(self):
        game = GameSpec(
            (("r", "s"), ("z",)),
            ("r", "s"),
            ("x", "y"),
            {(0, 0, 0): F(1, 3), (1, 0, 1): F(2, 3)},
            (((1, 0), (0, 1)), ((1,), (0,))),
            ((1, 0), (0, 1)),
        )
        for K in (1, 2, 3):
            pi, value = brute_force_optimal_signal(game, 0, K)
            assert value == 1
            assert pi == full_info_signal(game, 0)

    def test_deterministic(self, ecig_game):
        assert brute_force_optimal_signal(ecig_game, 0, 3) == brute_force_optimal_signal(ecig_game, 0, 3)


class TestBruteForceDeviation:
    def test_refuted_policy_profile_has_grid_improvement(self, policy_game):
        profile = PureProfile((pooling_signal(policy_game, 0), pooling_signal(policy_game, 1)))
        verdict = check_equilibrium(policy_game, profile)
        assert verdict.kind == "refuted"
        current = profile_payoffs(policy_game, profile).sender_values[0]
        # the eps-mix witness needs a fine grid: resolutions 2..10 only reach
        # the current payoff, 12 is the coarsest with a strict gain
        assert brute_force_best_deviation(policy_game, profile, 0, 2)[0] == current
        best, _ = brute_force_best_deviation(policy_game, profile, 0, 12)
        assert best > current

    @pytest.mark.parametrize("K", [1, 2, 3])
    def test_ecig_full_info_has_no_improvement(self, ecig_game, K):
        profile = PureProfile((full_info_signal(ecig_game, 0), full_info_signal(ecig_game, 1)))
        current = profile_payoffs(ecig_game, profile).sender_values
        for i in range(2):
            assert brute_force_best_deviation(ecig_game, profile, i, K)[0] <= current[i]

    def test_dominated_rival_matches_single_sender_oracle(self, policy_game):
        # the pooling optimum gives the receiver 11/20 against 1/2 for the
        # rival's constant signal, so sender 0 effectively faces the receiver alone
        profile = PureProfile((full_info_signal(policy_game, 0), Signal.constant(policy_game, 1, 0)))
        best, _ = brute_force_best_deviation(policy_game, profile, 0, 1)
        assert best == brute_force_optimal_signal(policy_game, 0, 1)[1] == 1
