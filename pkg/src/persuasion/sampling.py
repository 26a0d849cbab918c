"""Random games and signals for property tests and the acceptance suite."""

from __future__ import annotations

import random
from fractions import Fraction
from itertools import product

from .equilibrium import PureProfile, decide
from .model import GameSpec, Signal, is_fully_informative, obedient_relabel, validate_game


def _utility_table(rng: random.Random, actions: int, states: int, best=None):
    """Integer utilities in [0, 9] with a unique best action per state.

    ``best[w]`` forces the best action at state ``w`` when given.
    """
    table = [[Fraction(rng.randint(0, 8)) for _ in range(states)] for _ in range(actions)]
    for w in range(states):
        top = best[w] if best is not None else rng.randrange(actions)
        table[top][w] = max(table[a][w] for a in range(actions)) + 1
    return tuple(tuple(row) for row in table)


def random_game(
    rng: random.Random,
    n: int = 2,
    max_sender_states: int = 3,
    max_receiver_states: int = 3,
    max_actions: int = 3,
    zero_prob: float = 0.15,
) -> GameSpec:
    """A random game that satisfies both modelling assumptions.

    Every sender gets at least one state whose preferred action matches each
    receiver optimum; the prior may drop states as long as the validation
    still passes.
    """
    while True:
        m = rng.randint(2, max_actions)
        nr = rng.randint(1, max_receiver_states)
        ropt = [rng.randrange(m) for _ in range(nr)]
        needed = sorted(set(ropt))
        if len(needed) > max_sender_states:
            continue
        sizes = [rng.randint(len(needed), max_sender_states) for _ in range(n)]
        sender_utility = []
        for size in sizes:
            best = needed + [rng.randrange(m) for _ in range(size - len(needed))]
            rng.shuffle(best)
            sender_utility.append(_utility_table(rng, m, size, best))

        states = list(product(*[range(s) for s in sizes], range(nr)))
        weights = [0 if rng.random() < zero_prob else rng.randint(1, 9) for _ in states]
        total = sum(weights)
        if total == 0:
            continue
        prior = {s: Fraction(w, total) for s, w in zip(states, weights) if w}
        game = GameSpec(
            tuple(tuple(f"s{k}{c}" for c in range(size)) for k, size in enumerate(sizes)),
            tuple(f"r{c}" for c in range(nr)),
            tuple(f"a{c}" for c in range(m)),
            prior,
            tuple(sender_utility),
            _utility_table(rng, m, nr, ropt),
        )
        if validate_game(game).ok:
            return game


def random_signal(rng: random.Random, game: GameSpec, i: int, max_weight: int = 4) -> Signal:
    """Random rows with small integer weights; not necessarily IC."""
    rows = {}
    for key in game.pairs(i):
        weights = [rng.randint(0, max_weight) for _ in range(game.num_actions)]
        if not any(weights):
            weights[rng.randrange(game.num_actions)] = 1
        total = sum(weights)
        rows[key] = tuple(Fraction(w, total) for w in weights)
    return Signal(i, rows)


def random_ic_signal(rng: random.Random, game: GameSpec, i: int) -> Signal:
    return obedient_relabel(game, random_signal(rng, game, i))


def random_uninformative_ic_signal(rng: random.Random, game: GameSpec, i: int, tries: int = 50):
    """IC signal that is not fully informative, or None if none turned up."""
    for _ in range(tries):
        s = random_ic_signal(rng, game, i)
        if not is_fully_informative(game, s):
            return s
    return None


def random_refutable_profile(rng: random.Random, game: GameSpec, tries: int = 50):
    """Pure IC profile whose chosen set contains a signal that is not fully informative."""
    for _ in range(tries):
        signals = tuple(random_ic_signal(rng, game, k) for k in range(game.n))
        if any(not is_fully_informative(game, signals[k]) for k in decide(game, signals)):
            return PureProfile(signals)
    return None


def small_game(rng: random.Random) -> GameSpec:
    """Game small enough for grid enumeration at resolution 4.

    Three actions are only allowed when each sender sees at most two state pairs.
    """
    while True:
        game = random_game(rng, max_sender_states=2, max_receiver_states=2, max_actions=3)
        if game.num_actions == 2 or all(len(game.pairs(i)) <= 2 for i in range(game.n)):
            return game
