import random
from fractions import Fraction as F

import pytest
from hypothesis import given, strategies as st

from persuasion import (
    GameSpec,
    LPProblem,
    full_info_signal,
    is_incentive_compatible,
    optimal_signal,
    persuasion_lp,
    receiver_value,
    sender_value,
    solve_lp,
)
from persuasion.lp import INFEASIBLE, OPTIMAL, UNBOUNDED, check_feasible
from persuasion.model import marginal_prior
from persuasion.oracle import enumerate_deterministic_signals, grid_signals
from persuasion.sampling import random_game, small_game


def lp(objective, equalities=(), inequalities=(), names=None, nonnegative=None):
    names = names or tuple(f"x{k}" for k in range(len(objective)))
    return LPProblem(names, objective, equalities, inequalities, nonnegative)


class TestSolveLP:
    def test_single_bound(self):
        sol = solve_lp(lp((1,), inequalities=[((-1,), -1)]))
        assert sol.status == OPTIMAL
        assert sol.assignment == {"x0": 1} and sol.objective_value == 1

    def test_degenerate_optimum(self):
        sol = solve_lp(lp((1, 1), equalities=[((1, 1), 1)]))
        assert sol.status == OPTIMAL and sol.objective_value == 1

    def test_unbounded(self):
        assert solve_lp(lp((1, 0), inequalities=[((1, -1), 0)])).status == UNBOUNDED

    def test_infeasible(self):
        problem = lp((1,), equalities=[((1,), 2)], inequalities=[((-1,), -1)])
        assert solve_lp(problem).status == INFEASIBLE

    def test_free_variable(self):
        # max -y s.t. y >= -3 with y free
        sol = solve_lp(lp((-1,), inequalities=[((1,), -3)], nonnegative=(False,)))
        assert sol.assignment == {"x0": -3} and sol.objective_value == 3

    def test_redundant_equalities(self):
        problem = lp((1, 2), equalities=[((1, 1), 1), ((2, 2), 2)])
        sol = solve_lp(problem)
        assert sol.objective_value == 2 and check_feasible(problem, sol.assignment)

    def test_exact_fractions(self):
        # max x + y s.t. 3x + y <= 1, x + 3y <= 1
        sol = solve_lp(lp((1, 1), inequalities=[((-3, -1), -1), ((-1, -3), -1)]))
        assert sol.assignment == {"x0": F(1, 4), "x1": F(1, 4)}
        assert sol.objective_value == F(1, 2)

    def test_reduced_costs_certify(self):
        sol = solve_lp(lp((1, 1), inequalities=[((-3, -1), -1), ((-1, -3), -1)]))
        assert all(c <= 0 for c in sol.reduced_costs.values())

    def test_cycling_example_terminates(self):
        # Beale's classic cycling instance, written as max with >= rows
        obj = (F(3, 4), -150, F(1, 50), -6)
        rows = [
            ((-F(1, 4), 60, F(1, 25), -9), 0),
            ((-F(1, 2), 90, F(1, 50), -3), 0),
            ((0, 0, -1, 0), -1),
        ]
        sol = solve_lp(lp(obj, inequalities=rows))
        assert sol.status == OPTIMAL and sol.objective_value == F(1, 20)

    def test_deterministic(self):
        problem = lp((1, 1, 1), equalities=[((1, 1, 1), 1)])
        a, b = solve_lp(problem), solve_lp(problem)
        assert a == b

    def test_row_length_checked(self):
        with pytest.raises(ValueError):
            lp((1, 1), equalities=[((1,), 1)])


class TestOptimalSignal:
    def test_ecig(self, ecig_game):
        pi, value = optimal_signal(ecig_game, 0)
        assert value == F(9, 10)
        assert sender_value(ecig_game, 0, pi) == value
        assert is_incentive_compatible(ecig_game, pi)

    def test_policy(self, policy_game):
        pi, value = optimal_signal(policy_game, 0)
        assert value == 1
        assert receiver_value(policy_game, pi) == F(11, 20)

    def test_aligned_sender_reveals(self):
        game = GameSpec(
            (("a", "b"), ("x",)),
            ("a", "b"),
            ("A", "B"),
            {(0, 0, 0): F(1, 3), (1, 0, 1): F(2, 3)},
            (((1, 0), (0, 1)), ((1,), (0,))),
            ((1, 0), (0, 1)),
        )
        _, value = optimal_signal(game, 0)
        assert value == sender_value(game, 0, full_info_signal(game, 0)) == 1

    def test_lp_shape(self, ecig_game):
        problem, index = persuasion_lp(ecig_game, 0)
        assert len(problem.variables) == 8 == len(index)
        assert len(problem.equalities) == 4
        assert len(problem.inequalities) == 2

    @given(st.integers(0, 10**6).map(random.Random))
    def test_full_info_is_feasible(self, rng):
        game = random_game(rng)
        i = rng.randrange(game.n)
        problem, index = persuasion_lp(game, i)
        full = full_info_signal(game, i)
        marg = marginal_prior(game, i)
        assignment = {name: marg[k] * full.rows[k][a] for name, (k, a) in zip(problem.variables, index)}
        assert check_feasible(problem, assignment)

    @given(st.integers(0, 10**6).map(random.Random))
    def test_value_matches_signal_and_is_ic(self, rng):
        game = random_game(rng)
        i = rng.randrange(game.n)
        pi, value = optimal_signal(game, i)
        assert is_incentive_compatible(game, pi)
        assert sender_value(game, i, pi) == value

    @pytest.mark.parametrize("seed", range(10))
    def test_dominates_enumerated_ic_signals(self, seed):
        rng = random.Random(seed)
        game = small_game(rng)
        _, value = optimal_signal(game, 0)
        for family in (enumerate_deterministic_signals(game, 0), grid_signals(game, 0, 2)):
            for pi in family:
                if is_incentive_compatible(game, pi):
                    assert sender_value(game, 0, pi) <= value
