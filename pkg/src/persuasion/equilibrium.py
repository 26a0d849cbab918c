"""Profiles, the receiver's choice of sender, and the deviation search.

The receiver observes every sender's committed signal and picks uniformly
among the senders whose signals give the receiver the highest expected utility.
:func:`find_profitable_deviation` walks a fixed, finite family of candidate
deviations (improve on a competitor, copy a competitor, reveal everything,
blend own signal with full revelation) and returns the first one that is
strictly profitable.  Failing to find one does not certify an equilibrium.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from itertools import product
from math import prod
from typing import Sequence, Union

from .constructions import ImprovementTrace, improve, mix_with_full_info, simulate
from .errors import AssumptionViolation, GameError, NothingToImprove, SizeLimitExceeded
from .model import (
    ZERO,
    GameSpec,
    Signal,
    ValidationReport,
    full_info_signal,
    is_fully_informative,
    signal_values,
    validate_game,
)

DEFAULT_REALIZATION_BOUND = 10_000
EPS_SCHEDULE = tuple(Fraction(1, 2**k) for k in range(1, 11))

REFUTED = "refuted"
FULLY_INFORMATIVE = "fully-informative-consistent"
NONE_FOUND = "no-deviation-found"


@dataclass(frozen=True)
class PureProfile:
    signals: tuple[Signal, ...]

    def __post_init__(self):
        object.__setattr__(self, "signals", tuple(self.signals))
        for k, s in enumerate(self.signals):
            if s.sender != k:
                raise GameError(f"profile slot {k} holds a signal of sender {s.sender}")


@dataclass(frozen=True)
class MixedProfile:
    """Finite-support mixed strategies: ``strategies[k]`` lists ``(signal, prob)``."""

    strategies: tuple[tuple[tuple[Signal, Fraction], ...], ...]

    def __post_init__(self):
        frozen = []
        for k, strat in enumerate(self.strategies):
            strat = tuple((s, Fraction(p)) for s, p in strat)
            if not strat:
                raise GameError(f"sender {k} has an empty support")
            for s, p in strat:
                if s.sender != k:
                    raise GameError(f"strategy {k} contains a signal of sender {s.sender}")
                if p <= 0:
                    raise GameError(f"sender {k}: support probabilities must be positive")
            total = sum((p for _, p in strat), ZERO)
            if total != 1:
                raise GameError(f"sender {k}: probabilities sum to {total}, not 1")
            frozen.append(strat)
        object.__setattr__(self, "strategies", tuple(frozen))

    @classmethod
    def from_pure(cls, profile: PureProfile) -> "MixedProfile":
        return cls(tuple(((s, Fraction(1)),) for s in profile.signals))

    @property
    def is_pure(self) -> bool:
        return all(len(s) == 1 for s in self.strategies)

    def with_strategy(self, i: int, strategy) -> "MixedProfile":
        strategies = list(self.strategies)
        strategies[i] = tuple(strategy)
        return MixedProfile(tuple(strategies))


Profile = Union[PureProfile, MixedProfile]


def as_mixed(profile: Profile) -> MixedProfile:
    return MixedProfile.from_pure(profile) if isinstance(profile, PureProfile) else profile


def _check_profile(game: GameSpec, profile: MixedProfile):
    if len(profile.strategies) != game.n:
        raise GameError(f"profile has {len(profile.strategies)} senders, game has {game.n}")


@dataclass(frozen=True)
class Realization:
    indices: tuple[int, ...]  # support index drawn for each sender
    probability: Fraction
    chosen: tuple[int, ...]  # receiver picks uniformly among these senders


@dataclass(frozen=True)
class ProfilePayoffs:
    receiver_value: Fraction
    sender_values: tuple[Fraction, ...]
    realizations: tuple[Realization, ...]


def decide(game: GameSpec, signals: Sequence[Signal]) -> dict[int, Fraction]:
    """Uniform choice over the senders whose signals maximise the receiver's value."""
    vals = [signal_values(game, s)[0] for s in signals]
    best = max(vals)
    chosen = [k for k, v in enumerate(vals) if v == best]
    w = Fraction(1, len(chosen))
    return {k: w for k in chosen}


def profile_payoffs(game: GameSpec, profile: PureProfile) -> ProfilePayoffs:
    if isinstance(profile, MixedProfile):
        raise TypeError("profile_payoffs expects a PureProfile; use mixed_profile_payoffs")
    return mixed_profile_payoffs(game, MixedProfile.from_pure(profile))


def mixed_profile_payoffs(
    game: GameSpec, profile: MixedProfile, bound: int = DEFAULT_REALIZATION_BOUND
) -> ProfilePayoffs:
    profile = as_mixed(profile)
    _check_profile(game, profile)
    count = prod(len(s) for s in profile.strategies)
    if count > bound:
        raise SizeLimitExceeded(f"{count} realizations exceed the bound {bound}", count, bound)

    vr = ZERO
    vs = [ZERO] * game.n
    realizations = []
    for idx in product(*(range(len(s)) for s in profile.strategies)):
        drawn = [profile.strategies[k][t] for k, t in enumerate(idx)]
        p = prod((q for _, q in drawn), start=Fraction(1))
        signals = [s for s, _ in drawn]
        choice = decide(game, signals)
        for j, w in choice.items():
            r, senders = signal_values(game, signals[j])
            vr += p * w * r
            for k in range(game.n):
                vs[k] += p * w * senders[k]
        realizations.append(Realization(idx, p, tuple(choice)))
    return ProfilePayoffs(vr, tuple(vs), tuple(realizations))


@dataclass(frozen=True)
class SupportAnalysis:
    """Receiver values reachable in each sender's support.

    ``never_chosen[i]`` lists support positions of sender ``i`` whose receiver
    value is below ``tau``; the receiver never picks them.
    """

    T: tuple[tuple[Fraction, ...], ...]
    tau_i: tuple[Fraction, ...]
    tau: Fraction
    never_chosen: tuple[tuple[int, ...], ...]

    @property
    def all_tau_equal(self) -> bool:
        return len(set(self.tau_i)) == 1


def support_analysis(profile: Profile, game: GameSpec) -> SupportAnalysis:
    profile = as_mixed(profile)
    _check_profile(game, profile)
    values = [[signal_values(game, s)[0] for s, _ in strat] for strat in profile.strategies]
    T = tuple(tuple(sorted(set(v))) for v in values)
    tau_i = tuple(t[0] for t in T)
    tau = max(tau_i)
    never = tuple(tuple(t for t, v in enumerate(vals) if v < tau) for vals in values)
    return SupportAnalysis(T, tau_i, tau, never)


@dataclass(frozen=True)
class DeviationWitness:
    deviator: int
    new_signal: Signal
    new_strategy: tuple[tuple[Signal, Fraction], ...]
    old_payoff: Fraction
    new_payoff: Fraction
    construction: str  # improve-on-chosen | simulate | full-info | eps-mix
    source: tuple[int, int] | None = None  # (sender, support position) built upon
    trace: ImprovementTrace | None = None
    epsilon: Fraction | None = None

    @property
    def gain(self) -> Fraction:
        return self.new_payoff - self.old_payoff

    def deviated_profile(self, profile: Profile) -> MixedProfile:
        return as_mixed(profile).with_strategy(self.deviator, self.new_strategy)


def replay(game: GameSpec, profile: Profile, witness: DeviationWitness) -> bool:
    """Recompute both payoffs from scratch and confirm the strict gain."""
    old = mixed_profile_payoffs(game, as_mixed(profile)).sender_values[witness.deviator]
    new = mixed_profile_payoffs(game, witness.deviated_profile(profile)).sender_values[witness.deviator]
    return old == witness.old_payoff and new == witness.new_payoff and new > old


def find_profitable_deviation(
    game: GameSpec,
    profile: Profile,
    i: int,
    schedule: Sequence[Fraction] = EPS_SCHEDULE,
    notes: list | None = None,
) -> DeviationWitness | None:
    """First strictly profitable deviation for sender ``i`` in the canonical order.

    Stages: improve on a competitor's potentially chosen signal (best for
    ``i`` first), simulate such a signal, reveal everything, and finally blend
    ``i``'s lowest-ranked signals with full revelation for decreasing
    ``epsilon``.  Returns ``None`` when the family contains no improvement.
    """
    game.sender_index(i)
    mixed = as_mixed(profile)
    _check_profile(game, mixed)
    notes = notes if notes is not None else []
    old = mixed_profile_payoffs(game, mixed).sender_values[i]
    sa = support_analysis(mixed, game)
    tau = sa.tau
    own = mixed.strategies[i]

    def payoff(strategy):
        return mixed_profile_payoffs(game, mixed.with_strategy(i, strategy)).sender_values[i]

    low = [t for t, (s, _) in enumerate(own) if signal_values(game, s)[0] <= tau]

    def strategies_for(sigma):
        yield ((sigma, Fraction(1)),)
        if 0 < len(low) < len(own):
            kept = [own[t] for t in range(len(own)) if t not in low]
            yield tuple(kept) + ((sigma, sum((own[t][1] for t in low), ZERO)),)

    def attempt(sigma, tag, **extra):
        for strategy in strategies_for(sigma):
            new = payoff(strategy)
            if new > old:
                return DeviationWitness(i, sigma, strategy, old, new, tag, **extra)
        return None

    candidates = []
    for k, strat in enumerate(mixed.strategies):
        if k == i:
            continue
        for t, (s, _) in enumerate(strat):
            vr, vs = signal_values(game, s)
            if vr >= tau:
                candidates.append((-vs[i], k, t, s))
    candidates.sort(key=lambda c: c[:3])

    for _, k, t, s in candidates:
        if is_fully_informative(game, s):
            continue
        try:
            sigma, trace = improve(game, i, s)
        except NothingToImprove:
            continue
        except AssumptionViolation as exc:
            notes.append(f"improve on sender {k} signal {t} skipped: {exc}")
            continue
        w = attempt(sigma, "improve-on-chosen", source=(k, t), trace=trace)
        if w:
            return w

    for _, k, t, s in candidates:
        w = attempt(simulate(game, i, s), "simulate", source=(k, t))
        if w:
            return w

    try:
        full = full_info_signal(game, i)
    except AssumptionViolation as exc:
        notes.append(f"full-information deviation unavailable: {exc}")
        return None
    w = attempt(full, "full-info")
    if w:
        return w

    top = [t for t, (s, _) in enumerate(own) if signal_values(game, s)[0] == tau]
    if not top:
        return None
    eps_list = list(schedule)
    if mixed.is_pure:
        # exact threshold where blending still beats the current payoff,
        # valid when the blend makes i the unique choice
        vi = signal_values(game, own[0][0])[1][i]
        vf = signal_values(game, full)[1][i]
        if vi > old and vi > vf:
            star = (vi - old) / (2 * (vi - vf))
            if 0 < star < min(eps_list, default=Fraction(1)):
                eps_list.append(star)
    for eps in eps_list:
        strategy = tuple(
            (mix_with_full_info(game, s, eps) if t in top else s, p) for t, (s, p) in enumerate(own)
        )
        new = payoff(strategy)
        if new > old:
            return DeviationWitness(i, strategy[top[0]][0], strategy, old, new, "eps-mix", epsilon=eps)
    return None


@dataclass(frozen=True)
class Verdict:
    kind: str
    payoffs: ProfilePayoffs
    support: SupportAnalysis
    validation: ValidationReport
    witness: DeviationWitness | None = None
    notes: tuple[str, ...] = ()


def check_equilibrium(game: GameSpec, profile: Profile) -> Verdict:
    """Refute ``profile`` as an equilibrium if the construction family allows it.

    ``fully-informative-consistent`` means every signal the receiver picks with
    positive probability is fully informative.  ``no-deviation-found`` is not an
    equilibrium certificate: the signal space is infinite.
    """
    report = validate_game(game)
    notes = []
    if not report.assumption1_ok:
        notes.append(f"warning: Assumption 1 fails at {list(report.assumption1_violations)}")
    if not report.assumption2_ok:
        notes.append(f"warning: Assumption 2 fails at {list(report.assumption2_violations)}")

    mixed = as_mixed(profile)
    payoffs = mixed_profile_payoffs(game, mixed)
    support = support_analysis(mixed, game)

    uninformative_chosen = False
    for r in payoffs.realizations:
        for j in r.chosen:
            if not is_fully_informative(game, mixed.strategies[j][r.indices[j]][0]):
                uninformative_chosen = True
    if not uninformative_chosen:
        return Verdict(FULLY_INFORMATIVE, payoffs, support, report, notes=tuple(notes))

    for i in range(game.n):
        w = find_profitable_deviation(game, mixed, i, notes=notes)
        if w is not None:
            return Verdict(REFUTED, payoffs, support, report, w, tuple(notes))
    notes.append(
        "no deviation found in the constructive family; this is not an equilibrium certificate"
    )
    return Verdict(NONE_FOUND, payoffs, support, report, notes=tuple(notes))


def pessimistic_payoff(game: GameSpec, profile: PureProfile, i: int, deviation: Signal) -> Fraction:
    """Sender ``i``'s payoff after deviating when the receiver breaks ties against the deviator."""
    game.sender_index(i)
    if deviation.sender != i:
        raise GameError(f"deviation belongs to sender {deviation.sender}, not {i}")
    signals = list(profile.signals)
    signals[i] = deviation
    chosen = decide(game, signals)
    return min(signal_values(game, signals[j])[1][i] for j in chosen)
