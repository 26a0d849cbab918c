"""Games, signals and beliefs, plus the basic exact evaluations on them.

Indices are 0-based throughout: sender ``i`` ranges over ``range(game.n)``,
a full state is a tuple ``(w_0, ..., w_{n-1}, w_R)`` of label indices, and a
signal row is keyed by the pair ``(w_i, w_R)`` of its own sender.

Receiver behaviour after a message: if the recommended action is a best
response to the posterior it is followed, otherwise the lowest-index best
response is taken.  For IC signals this is "follow the recommendation";
for arbitrary signals it is a deterministic, reproducible rule.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property, lru_cache
from typing import Mapping, Sequence

from .errors import AssumptionViolation, GameError, UnreachableMessage

ZERO = Fraction(0)
ONE = Fraction(1)

RECEIVER = "R"


def _unique_argmax(values: Sequence[Fraction]) -> int | None:
    best = max(values)
    hits = [a for a, v in enumerate(values) if v == best]
    return hits[0] if len(hits) == 1 else None


@dataclass(frozen=True)
class GameSpec:
    """A finite competing-senders persuasion game.

    ``sender_utility[i][a][w_i]`` and ``receiver_utility[a][w_R]`` are the
    payoff tables; ``prior`` maps full state tuples to probabilities and only
    keeps positive entries.
    """

    sender_states: tuple[tuple[str, ...], ...]
    receiver_states: tuple[str, ...]
    actions: tuple[str, ...]
    prior: Mapping[tuple[int, ...], Fraction]
    sender_utility: tuple[tuple[tuple[Fraction, ...], ...], ...]
    receiver_utility: tuple[tuple[Fraction, ...], ...]

    def __post_init__(self):
        set_ = object.__setattr__
        set_(self, "sender_states", tuple(tuple(s) for s in self.sender_states))
        set_(self, "receiver_states", tuple(self.receiver_states))
        set_(self, "actions", tuple(self.actions))
        n = len(self.sender_states)
        if n < 2:
            raise GameError(f"need at least two senders, got {n}")
        if not self.actions:
            raise GameError("action set is empty")
        if not self.receiver_states:
            raise GameError("receiver state space is empty")
        for i, states in enumerate(self.sender_states):
            if not states:
                raise GameError(f"sender {i} has an empty state space")
            if len(set(states)) != len(states):
                raise GameError(f"sender {i} has duplicate state labels")
        if len(set(self.receiver_states)) != len(self.receiver_states):
            raise GameError("duplicate receiver state labels")
        if len(set(self.actions)) != len(self.actions):
            raise GameError("duplicate action labels")

        sizes = [len(s) for s in self.sender_states] + [len(self.receiver_states)]
        prior = {}
        for key, p in self.prior.items():
            key = tuple(key)
            if len(key) != n + 1:
                raise GameError(f"prior key {key} should have {n + 1} coordinates")
            for coord, size in zip(key, sizes):
                if not 0 <= coord < size:
                    raise GameError(f"prior key {key} has an out-of-range index")
            p = Fraction(p)
            if p < 0:
                raise GameError(f"negative prior mass {p} at {key}")
            if p:
                prior[key] = prior.get(key, ZERO) + p
        total = sum(prior.values(), ZERO)
        if total != 1:
            raise GameError(
                f"prior sums to {total}, not 1 (deficit {ONE - total})"
            )
        set_(self, "prior", dict(sorted(prior.items())))

        m = len(self.actions)
        if len(self.sender_utility) != n:
            raise GameError("one sender utility table per sender is required")
        su = []
        for i, table in enumerate(self.sender_utility):
            su.append(_freeze_table(table, m, sizes[i], f"sender {i} utility"))
        set_(self, "sender_utility", tuple(su))
        set_(
            self,
            "receiver_utility",
            _freeze_table(self.receiver_utility, m, sizes[-1], "receiver utility"),
        )

    def __hash__(self):
        return self._hash

    @cached_property
    def _hash(self) -> int:
        return hash(
            (
                self.sender_states,
                self.receiver_states,
                self.actions,
                tuple(self.prior.items()),
                self.sender_utility,
                self.receiver_utility,
            )
        )

    @property
    def n(self) -> int:
        return len(self.sender_states)

    @property
    def num_actions(self) -> int:
        return len(self.actions)

    @cached_property
    def receiver_optimum(self) -> tuple[int | None, ...]:
        """Unique best action per receiver state, ``None`` where tied."""
        table = self.receiver_utility
        return tuple(
            _unique_argmax([table[a][w] for a in range(self.num_actions)])
            for w in range(len(self.receiver_states))
        )

    @cached_property
    def sender_optimum(self) -> tuple[tuple[int | None, ...], ...]:
        out = []
        for i, table in enumerate(self.sender_utility):
            out.append(
                tuple(
                    _unique_argmax([table[a][w] for a in range(self.num_actions)])
                    for w in range(len(self.sender_states[i]))
                )
            )
        return tuple(out)

    @cached_property
    def _pair_marginals(self) -> tuple[dict[tuple[int, int], Fraction], ...]:
        out = []
        for i in range(self.n):
            marg: dict[tuple[int, int], Fraction] = {}
            for state, p in self.prior.items():
                key = (state[i], state[-1])
                marg[key] = marg.get(key, ZERO) + p
            out.append(dict(sorted(marg.items())))
        return tuple(out)

    def pairs(self, i: int) -> list[tuple[int, int]]:
        """Positive-probability ``(w_i, w_R)`` pairs of sender ``i``, sorted."""
        return list(self._pair_marginals[i])

    @cached_property
    def receiver_marginal(self) -> dict[int, Fraction]:
        marg: dict[int, Fraction] = {}
        for state, p in self.prior.items():
            marg[state[-1]] = marg.get(state[-1], ZERO) + p
        return dict(sorted(marg.items()))

    def sender_index(self, i: int) -> int:
        if not 0 <= i < self.n:
            raise GameError(f"sender index {i} out of range 0..{self.n - 1}")
        return i

    def action_index(self, label: str) -> int:
        try:
            return self.actions.index(label)
        except ValueError:
            raise GameError(f"unknown action {label!r}") from None


def _freeze_table(table, m, width, what):
    if len(table) != m:
        raise GameError(f"{what}: expected {m} action rows, got {len(table)}")
    rows = []
    for a, row in enumerate(table):
        if len(row) != width:
            raise GameError(f"{what}: row for action {a} has {len(row)} entries, expected {width}")
        rows.append(tuple(Fraction(u) for u in row))
    return tuple(rows)


@dataclass(frozen=True)
class Signal:
    """A sender's recommendation rule: ``rows[(w_i, w_R)][a]``."""

    sender: int
    rows: Mapping[tuple[int, int], tuple[Fraction, ...]]

    def __post_init__(self):
        rows = {}
        for key, dist in self.rows.items():
            dist = tuple(Fraction(x) for x in dist)
            if any(x < 0 or x > 1 for x in dist):
                raise GameError(f"signal row {key} has an entry outside [0, 1]")
            if sum(dist, ZERO) != 1:
                raise GameError(f"signal row {key} sums to {sum(dist, ZERO)}, not 1")
            rows[tuple(key)] = dist
        object.__setattr__(self, "rows", dict(sorted(rows.items())))

    def __hash__(self):
        return self._hash

    @cached_property
    def _hash(self) -> int:
        return hash((self.sender, tuple(self.rows.items())))

    @classmethod
    def deterministic(cls, sender: int, choice: Mapping[tuple[int, int], int], num_actions: int) -> "Signal":
        rows = {}
        for key, a in choice.items():
            dist = [ZERO] * num_actions
            dist[a] = ONE
            rows[key] = tuple(dist)
        return cls(sender, rows)

    @classmethod
    def constant(cls, game: GameSpec, sender: int, action: int) -> "Signal":
        return cls.deterministic(sender, {k: action for k in game.pairs(sender)}, game.num_actions)

    @classmethod
    def from_function(cls, game: GameSpec, sender: int, fn) -> "Signal":
        """Build from ``fn(w_i, w_R) -> sequence of probabilities``."""
        return cls(sender, {k: tuple(fn(*k)) for k in game.pairs(sender)})


def validate_signal(game: GameSpec, pi: Signal) -> None:
    """Raise :class:`GameError` unless ``pi`` fits ``game`` exactly."""
    game.sender_index(pi.sender)
    expected = set(game.pairs(pi.sender))
    got = set(pi.rows)
    if got != expected:
        missing = sorted(expected - got)
        extra = sorted(got - expected)
        raise GameError(f"signal rows mismatch: missing {missing}, unexpected {extra}")
    for key, dist in pi.rows.items():
        if len(dist) != game.num_actions:
            raise GameError(f"signal row {key} has {len(dist)} entries, expected {game.num_actions}")


@dataclass(frozen=True)
class Belief:
    """Posterior over full states after ``sender``'s signal recommended ``action``."""

    sender: int
    action: int
    distribution: Mapping[tuple[int, ...], Fraction]

    def _marginal(self, project) -> dict:
        out: dict = {}
        for state, p in self.distribution.items():
            k = project(state)
            out[k] = out.get(k, ZERO) + p
        return dict(sorted(out.items()))

    def receiver_marginal(self) -> dict[int, Fraction]:
        return self._marginal(lambda s: s[-1])

    def sender_marginal(self, i: int) -> dict[int, Fraction]:
        return self._marginal(lambda s: s[i])

    def pair_marginal(self, i: int) -> dict[tuple[int, int], Fraction]:
        return self._marginal(lambda s: (s[i], s[-1]))


@dataclass(frozen=True)
class ValidationReport:
    prior_ok: bool
    assumption1_ok: bool
    assumption2_ok: bool
    assumption1_violations: tuple = ()
    assumption2_violations: tuple = ()

    @property
    def ok(self) -> bool:
        return self.prior_ok and self.assumption1_ok and self.assumption2_ok


@dataclass(frozen=True)
class ICCheck:
    """Result of an incentive-compatibility test.

    ``violations`` holds ``(recommended, better_action)`` pairs.
    """

    ok: bool
    violations: tuple[tuple[int, int], ...] = ()

    def __bool__(self):
        return self.ok


@dataclass(frozen=True)
class InformativenessCheck:
    ok: bool
    counterexample: tuple[int, int] | None = None  # (action, w_R)

    def __bool__(self):
        return self.ok


def validate_game(game: GameSpec) -> ValidationReport:
    total = sum(game.prior.values(), ZERO)
    if total != 1 or any(p < 0 for p in game.prior.values()):
        raise GameError(f"prior sums to {total}, not 1 (deficit {ONE - total})")

    a1 = []
    for i in range(game.n):
        for w, best in enumerate(game.sender_optimum[i]):
            if best is None:
                a1.append((i, w))
    for w, best in enumerate(game.receiver_optimum):
        if best is None:
            a1.append((RECEIVER, w))

    a2 = []
    triples: dict[tuple[int, int], dict[tuple[int, int, int], Fraction]] = {}
    for i in range(game.n):
        for j in range(game.n):
            if i == j:
                continue
            masses: dict[tuple[int, int, int], Fraction] = {}
            for state, p in game.prior.items():
                k = (state[j], state[-1], state[i])
                masses[k] = masses.get(k, ZERO) + p
            triples[i, j] = masses
            for wj, wr in sorted({(k[0], k[1]) for k in masses}):
                target = game.receiver_optimum[wr]
                aligned = target is not None and any(
                    game.sender_optimum[i][wi] == target
                    for (xj, xr, wi) in masses
                    if xj == wj and xr == wr
                )
                if not aligned:
                    a2.append((i, j, wj, wr))
    return ValidationReport(
        prior_ok=True,
        assumption1_ok=not a1,
        assumption2_ok=not a2,
        assumption1_violations=tuple(a1),
        assumption2_violations=tuple(a2),
    )


def marginal_prior(game: GameSpec, i: int) -> dict[tuple[int, int], Fraction]:
    return dict(game._pair_marginals[game.sender_index(i)])


def message_probability(game: GameSpec, pi: Signal, a: int) -> Fraction:
    marg = game._pair_marginals[pi.sender]
    return sum((p * pi.rows[k][a] for k, p in marg.items()), ZERO)


def _masses(game: GameSpec, pi: Signal, a: int) -> dict[tuple[int, ...], Fraction]:
    i = pi.sender
    out = {}
    for state, p in game.prior.items():
        q = pi.rows[(state[i], state[-1])][a]
        if q:
            out[state] = p * q
    return out


def posterior(game: GameSpec, pi: Signal, a: int) -> Belief:
    masses = _masses(game, pi, a)
    total = sum(masses.values(), ZERO)
    if not total:
        raise UnreachableMessage(f"unreachable message {game.actions[a]!r}")
    return Belief(pi.sender, a, {s: m / total for s, m in masses.items()})


def _expected_receiver_utils(game: GameSpec, belief_r: Mapping[int, Fraction]) -> list[Fraction]:
    table = game.receiver_utility
    return [sum((p * table[a][w] for w, p in belief_r.items()), ZERO) for a in range(game.num_actions)]


def receiver_best_action(belief_R: Mapping[int, Fraction], game: GameSpec) -> int:
    """Best response to a belief over receiver states, ties to the lowest index."""
    utils = _expected_receiver_utils(game, belief_R)
    return utils.index(max(utils))


def receiver_response(game: GameSpec, belief_R: Mapping[int, Fraction], recommended: int) -> int:
    """Action taken after ``recommended``: obeyed if optimal, else lowest best response."""
    utils = _expected_receiver_utils(game, belief_R)
    best = max(utils)
    if utils[recommended] == best:
        return recommended
    return utils.index(best)


@dataclass(frozen=True)
class _Outcome:
    prob: Fraction
    response: int
    receiver_masses: dict[int, Fraction]  # unnormalised posterior mass over w_R


@lru_cache(maxsize=1 << 14)
def _outcomes(game: GameSpec, pi: Signal) -> tuple[tuple[int, _Outcome], ...]:
    marg = game._pair_marginals[pi.sender]
    out = []
    for a in range(game.num_actions):
        rmass: dict[int, Fraction] = {}
        for (wi, wr), p in marg.items():
            q = pi.rows[(wi, wr)][a]
            if q:
                rmass[wr] = rmass.get(wr, ZERO) + p * q
        total = sum(rmass.values(), ZERO)
        if total:
            out.append((a, _Outcome(total, receiver_response(game, rmass, a), rmass)))
    return tuple(out)


def responses(game: GameSpec, pi: Signal) -> dict[int, int]:
    """Map each positive-probability message to the action the receiver takes."""
    return {a: o.response for a, o in _outcomes(game, pi)}


@lru_cache(maxsize=1 << 14)
def signal_values(game: GameSpec, pi: Signal) -> tuple[Fraction, tuple[Fraction, ...]]:
    """``(receiver_value, (sender_value_0, ..., sender_value_{n-1}))``."""
    resp = responses(game, pi)
    i = pi.sender
    vr = ZERO
    vs = [ZERO] * game.n
    ur = game.receiver_utility
    us = game.sender_utility
    for state, p in game.prior.items():
        row = pi.rows[(state[i], state[-1])]
        for a, b in resp.items():
            q = row[a]
            if not q:
                continue
            w = p * q
            vr += w * ur[b][state[-1]]
            for k in range(game.n):
                vs[k] += w * us[k][b][state[k]]
    return vr, tuple(vs)


def receiver_value(game: GameSpec, pi: Signal) -> Fraction:
    return signal_values(game, pi)[0]


def sender_value(game: GameSpec, k: int, pi: Signal) -> Fraction:
    return signal_values(game, pi)[1][game.sender_index(k)]


def is_incentive_compatible(game: GameSpec, pi: Signal) -> ICCheck:
    violations = []
    for a, o in _outcomes(game, pi):
        if o.response != a:
            violations.append((a, o.response))
    return ICCheck(not violations, tuple(violations))


def is_fully_informative(game: GameSpec, pi: Signal) -> InformativenessCheck:
    for a, o in _outcomes(game, pi):
        for wr in sorted(o.receiver_masses):
            if game.receiver_optimum[wr] != a:
                return InformativenessCheck(False, (a, wr))
    return InformativenessCheck(True)


def full_info_signal(game: GameSpec, i: int) -> Signal:
    game.sender_index(i)
    choice = {}
    for wi, wr in game.pairs(i):
        b = game.receiver_optimum[wr]
        if b is None:
            raise AssumptionViolation(
                f"receiver has no unique optimal action at {game.receiver_states[wr]!r}"
            )
        choice[(wi, wr)] = b
    return Signal.deterministic(i, choice, game.num_actions)


def full_information_value(game: GameSpec) -> Fraction:
    """Receiver's expected utility when always told the payoff-relevant state."""
    ur = game.receiver_utility
    return sum(
        (p * max(ur[a][w] for a in range(game.num_actions)) for w, p in game.receiver_marginal.items()),
        ZERO,
    )


def obedient_relabel(game: GameSpec, pi: Signal) -> Signal:
    """Rename every message to the action the receiver actually takes after it.

    The result is IC and induces exactly the same receiver and sender values;
    IC signals are returned unchanged.
    """
    resp = responses(game, pi)
    if all(a == b for a, b in resp.items()):
        return pi
    rows = {}
    for key, dist in pi.rows.items():
        new = [ZERO] * game.num_actions
        for a, q in enumerate(dist):
            new[resp.get(a, a)] += q
        rows[key] = tuple(new)
    return Signal(pi.sender, rows)
