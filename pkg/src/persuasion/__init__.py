"""Exact competing-senders Bayesian persuasion: models, constructions, LP and refuter."""

from .builtin import builtin_game, ecig, policy
from .cli import load_game
from .constructions import ImprovementTrace, Reroute, alignment_witness, improve, mix_with_full_info, simulate
from .equilibrium import (
    DeviationWitness,
    MixedProfile,
    ProfilePayoffs,
    PureProfile,
    SupportAnalysis,
    Verdict,
    check_equilibrium,
    decide,
    find_profitable_deviation,
    mixed_profile_payoffs,
    pessimistic_payoff,
    profile_payoffs,
    replay,
    support_analysis,
)
from .errors import (
    AssumptionViolation,
    EpsilonError,
    GameError,
    NothingToImprove,
    PersuasionError,
    SizeLimitExceeded,
    UnreachableMessage,
)
from .lp import LPProblem, LPSolution, optimal_signal, persuasion_lp, solve_lp
from .model import (
    Belief,
    GameSpec,
    Signal,
    ValidationReport,
    full_info_signal,
    full_information_value,
    is_fully_informative,
    is_incentive_compatible,
    marginal_prior,
    message_probability,
    obedient_relabel,
    posterior,
    receiver_best_action,
    receiver_value,
    sender_value,
    validate_game,
)
from .oracle import (
    GridSpec,
    brute_force_best_deviation,
    brute_force_optimal_signal,
    enumerate_deterministic_signals,
    grid_signals,
)
