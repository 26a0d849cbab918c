"""Signal-to-signal transformations used to build profitable deviations.

* :func:`simulate` lets sender ``i`` reproduce the joint distribution of
  recommendations and ``(w_i, w_R)`` induced by another sender's signal.
* :func:`alignment_witness` finds a state of ``i`` that is reachable after a
  recommendation and whose preferred action is the receiver's optimum.
* :func:`improve` perturbs a simulated signal so both the receiver and the
  deviating sender strictly gain.
* :func:`mix_with_full_info` blends a signal with full revelation.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .errors import AssumptionViolation, EpsilonError, GameError, NothingToImprove, UnreachableMessage
from .model import (
    ZERO,
    GameSpec,
    Signal,
    _masses,
    full_info_signal,
    is_fully_informative,
    obedient_relabel,
)


def simulate(game: GameSpec, i: int, pi_j: Signal) -> Signal:
    game.sender_index(i)
    j = pi_j.sender
    if i == j:
        raise GameError("simulate needs a signal of a different sender")
    m = game.num_actions
    joint: dict[tuple[int, int], list[Fraction]] = {k: [ZERO] * m for k in game.pairs(i)}
    for state, p in game.prior.items():
        acc = joint[(state[i], state[-1])]
        row = pi_j.rows[(state[j], state[-1])]
        for a in range(m):
            if row[a]:
                acc[a] += p * row[a]
    marg = game._pair_marginals[i]
    return Signal(i, {k: tuple(x / marg[k] for x in acc) for k, acc in joint.items()})


def _pair_posterior_mass(game: GameSpec, i: int, pi: Signal, a: int) -> dict[tuple[int, int], Fraction]:
    out: dict[tuple[int, int], Fraction] = {}
    for state, mass in _masses(game, pi, a).items():
        key = (state[i], state[-1])
        out[key] = out.get(key, ZERO) + mass
    return out


def alignment_witness(game: GameSpec, i: int, pi: Signal, a: int, omega_R: int) -> int:
    """Own state of ``i`` reachable jointly with ``omega_R`` after ``pi`` says ``a``.

    The witness must share its unique preferred action with the receiver's
    unique optimum at ``omega_R``.  Among several, the one with the largest
    joint posterior mass wins, then the lowest index.
    """
    game.sender_index(i)
    joint = _pair_posterior_mass(game, i, pi, a)
    if not joint:
        raise UnreachableMessage(f"unreachable message {game.actions[a]!r}")
    if not any(wr == omega_R for _, wr in joint):
        raise GameError(
            f"receiver state {game.receiver_states[omega_R]!r} is not in the posterior support"
        )
    target = game.receiver_optimum[omega_R]
    best = None
    if target is not None:
        for (wi, wr), mass in sorted(joint.items()):
            if wr == omega_R and game.sender_optimum[i][wi] == target:
                if best is None or mass > best[1]:
                    best = (wi, mass)
    if best is None:
        marginal_only = target is not None and any(
            game.sender_optimum[i][wi] == target for (wi, _) in joint
        )
        detail = " (an aligned state is reachable, but never together with this receiver state)" if marginal_only else ""
        raise AssumptionViolation(
            f"Assumption 2 violated on reachable event: no state of sender {i} aligned with "
            f"the receiver at {game.receiver_states[omega_R]!r} after {game.actions[a]!r}{detail}"
        )
    return best[0]


@dataclass(frozen=True)
class Reroute:
    receiver_state: int
    witness: int  # own state of the deviator
    action: int  # receiver optimum at receiver_state
    probability: Fraction  # share of the base recommendation moved to ``action``


@dataclass(frozen=True)
class ImprovementTrace:
    base_action: int
    bad_state: int  # receiver state where base_action is not optimal
    reroutes: tuple[Reroute, ...]
    epsilon: Fraction
    cap: Fraction


def improvement_plan(game: GameSpec, i: int, pi_j: Signal):
    """Simulated base signal, chosen recommendation and reroute targets.

    Returns ``(base, a_bar, w_bar, targets, cap)`` where ``targets`` lists
    ``(w_R, witness, b, ratio)`` with ``ratio = P(w_R | a_bar) / P(witness, w_R | a_bar)``;
    every ``eps <= cap`` keeps all reroute probabilities within ``[0, 1]``.
    """
    game.sender_index(i)
    straight = obedient_relabel(game, pi_j)
    check = is_fully_informative(game, straight)
    if check.ok:
        raise NothingToImprove("nothing to improve: the signal is fully informative")
    a_bar, w_bar = check.counterexample
    base = simulate(game, i, straight)

    joint = _pair_posterior_mass(game, i, base, a_bar)
    rmass: dict[int, Fraction] = {}
    for (_, wr), mass in joint.items():
        rmass[wr] = rmass.get(wr, ZERO) + mass

    targets = []
    for wr in sorted(rmass):
        b = game.receiver_optimum[wr]
        if b is None:
            raise AssumptionViolation(
                f"receiver has no unique optimal action at {game.receiver_states[wr]!r}"
            )
        w = alignment_witness(game, i, base, a_bar, wr)
        targets.append((wr, w, b, rmass[wr] / joint[(w, wr)]))
    cap = min(1 / ratio for *_, ratio in targets)
    return base, a_bar, w_bar, targets, cap


def improve(game: GameSpec, i: int, pi_j: Signal, epsilon=None) -> tuple[Signal, ImprovementTrace]:
    """Strict improvement over ``pi_j`` for both sender ``i`` and the receiver.

    A signal that is not IC is first replaced by its obedient relabelling,
    which has the same values.  ``epsilon`` defaults to half the largest
    feasible value.
    """
    base, a_bar, w_bar, targets, cap = improvement_plan(game, i, pi_j)
    if epsilon is None:
        epsilon = cap / 2
    else:
        epsilon = Fraction(epsilon)
        if epsilon <= 0:
            raise EpsilonError(f"epsilon must be positive, got {epsilon}", cap)
        if epsilon > cap:
            raise EpsilonError(f"epsilon {epsilon} exceeds the feasible cap {cap}", cap)

    rows = {k: list(v) for k, v in base.rows.items()}
    reroutes = []
    for wr, w, b, ratio in targets:
        share = epsilon * ratio
        row = rows[(w, wr)]
        moved = share * row[a_bar]
        row[a_bar] -= moved
        row[b] += moved
        reroutes.append(Reroute(wr, w, b, share))
    signal = Signal(i, {k: tuple(v) for k, v in rows.items()})
    return signal, ImprovementTrace(a_bar, w_bar, tuple(reroutes), epsilon, cap)


def mix_with_full_info(game: GameSpec, pi: Signal, epsilon) -> Signal:
    epsilon = Fraction(epsilon)
    if not 0 < epsilon < 1:
        raise EpsilonError(f"epsilon must lie strictly between 0 and 1, got {epsilon}")
    full = full_info_signal(game, pi.sender)
    keep = 1 - epsilon
    return Signal(
        pi.sender,
        {
            k: tuple(keep * x + epsilon * y for x, y in zip(dist, full.rows[k]))
            for k, dist in pi.rows.items()
        },
    )
