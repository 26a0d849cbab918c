"""Frozen reference values, each checked against the slow reference oracle.

Paper values come straight from the source text of the two motivating
examples.  Derived values were computed by hand, confirmed with
``tests/reference.py`` and frozen here.
"""

from fractions import Fraction as F

from persuasion import Signal, full_info_signal, optimal_signal

import reference as ref
from conftest import pooling_signal

# policy game, eps = 1/10
POLICY_EPS = F(1, 10)
POLICY_FULL_INFO_EXPERT = F(1, 2) + POLICY_EPS / 2  # 11/20
POLICY_SINGLE_SENDER_RECEIVER = F(1, 2) + POLICY_EPS / 2  # 11/20
POLICY_POOLING_P = 1 - POLICY_EPS / 2  # 19/20
POLICY_POOLING_BENEFICIAL_GIVEN_P = F(10, 19)
POLICY_POOLING_OTHER_EXPERT = F(91, 100)  # 0.9 * 19/20 + 0.1 * 11/20

# ecig
ECIG_PRIOR_DECIMALS = ["0.18", "0.08", "0.12", "0.12", "0.12", "0.12", "0.08", "0.18"]
ECIG_MARGINAL = {(0, 0): F(3, 10), (0, 1): F(1, 5), (1, 0): F(1, 5), (1, 1): F(3, 10)}
ECIG_FULL_INFO = (F(1), F(2, 5))
ECIG_SINGLE_SENDER = F(9, 10)
ECIG_BEST_K10 = F(22, 25)


class TestPolicyReference:
    def test_prior_is_independent_product(self, policy_game):
        for (w0, w1, wr), p in policy_game.prior.items():
            unb = [w0 >= 2, w1 >= 2]
            expected = F(1, 2)
            for u in unb:
                expected *= POLICY_EPS if u else 1 - POLICY_EPS
            assert p == expected

    def test_full_info_expert_value(self, policy_game):
        vr, vs = ref.values(policy_game, full_info_signal(policy_game, 0))
        assert vr == 1
        assert vs == [POLICY_FULL_INFO_EXPERT] * 2

    def test_pooling_signal(self, policy_game):
        pi = pooling_signal(policy_game, 0)
        assert ref.message_probs(policy_game, pi)[0] == POLICY_POOLING_P
        assert ref.receiver_belief(policy_game, pi, 0)[0] == POLICY_POOLING_BENEFICIAL_GIVEN_P
        vr, vs = ref.values(policy_game, pi)
        assert vr == POLICY_SINGLE_SENDER_RECEIVER
        assert vs == [1, POLICY_POOLING_OTHER_EXPERT]
        assert ref.is_ic(policy_game, pi)

    def test_single_sender_optimum_matches_reference(self, policy_game):
        pi, value = optimal_signal(policy_game, 0)
        vr, vs = ref.values(policy_game, pi)
        assert value == vs[0] == 1
        assert vr == POLICY_SINGLE_SENDER_RECEIVER


class TestEcigReference:
    def test_prior_table(self, ecig_game):
        assert sorted(ecig_game.prior.values()) == sorted(F(x) for x in ECIG_PRIOR_DECIMALS)
        assert sum(ecig_game.prior.values()) == 1

    def test_induced_prior_of_first_expert(self, ecig_game):
        marg = {}
        for (w0, _, wr), p in ecig_game.prior.items():
            marg[(w0, wr)] = marg.get((w0, wr), 0) + p
        assert marg == ECIG_MARGINAL

    def test_full_info_payoffs(self, ecig_game):
        for k in range(2):
            vr, vs = ref.values(ecig_game, full_info_signal(ecig_game, k))
            assert (vr, vs[k]) == ECIG_FULL_INFO

    def test_single_sender_optimum(self, ecig_game):
        for k in range(2):
            pi, value = optimal_signal(ecig_game, k)
            assert value == ECIG_SINGLE_SENDER
            assert ref.values(ecig_game, pi)[1][k] == ECIG_SINGLE_SENDER
            assert ref.is_ic(ecig_game, pi)

    def test_ten_grid_ceiling_by_hand(self, ecig_game):
        # with obedience binding the value is 1/2 - 2/5 p_HO + 2/5 p_UY, and
        # p_UO - p_HY is capped at 3/5 on the tenths grid: 7/10 + 3/10 * 3/5
        assert F(7, 10) + F(3, 10) * F(3, 5) == ECIG_BEST_K10
        rows = {(0, 0): (F(2, 5), F(3, 5)), (0, 1): (0, 1), (1, 0): (1, 0), (1, 1): (1, 0)}
        pi = Signal(0, rows)
        assert ref.is_ic(ecig_game, pi)
        assert ref.values(ecig_game, pi)[1][0] == ECIG_BEST_K10
