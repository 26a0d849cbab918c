"""Brute-force enumeration over lattice signals, for cross-checking on tiny games."""

from __future__ import annotations

import os
from dataclasses import dataclass
from fractions import Fraction
from itertools import product
from math import comb
from typing import Iterator

from .equilibrium import PureProfile, decide
from .errors import SizeLimitExceeded
from .model import ZERO, GameSpec, Signal, is_incentive_compatible, signal_values

BOUND_ENV = "PERSUASION_ORACLE_BOUND"
DEFAULT_BOUND = 10**6


def default_bound() -> int:
    raw = os.environ.get(BOUND_ENV)
    return int(raw) if raw else DEFAULT_BOUND


@dataclass(frozen=True)
class GridSpec:
    resolution: int
    pairs: int
    actions: int

    def __post_init__(self):
        if self.resolution < 1:
            raise ValueError(f"resolution must be a positive integer, got {self.resolution}")

    @property
    def row_count(self) -> int:
        return comb(self.resolution + self.actions - 1, self.actions - 1)

    @property
    def count(self) -> int:
        return self.row_count**self.pairs


def lattice_rows(m: int, K: int) -> list[tuple[Fraction, ...]]:
    """All distributions over ``m`` actions with entries in ``{0, 1/K, ..., 1}``, lexicographic."""

    def parts(total, slots):
        if slots == 1:
            yield (total,)
            return
        for first in range(total, -1, -1):
            for rest in parts(total - first, slots - 1):
                yield (first,) + rest

    return [tuple(Fraction(c, K) for c in p) for p in parts(K, m)]


def _enumerate(game: GameSpec, i: int, rows: list, bound: int) -> Iterator[Signal]:
    keys = game.pairs(game.sender_index(i))
    count = len(rows) ** len(keys)
    if count > bound:
        raise SizeLimitExceeded(
            f"{count} candidate signals exceed the enumeration bound {bound}", count, bound
        )
    for combo in product(rows, repeat=len(keys)):
        yield Signal(i, dict(zip(keys, combo)))


def enumerate_deterministic_signals(game: GameSpec, i: int, bound: int | None = None) -> Iterator[Signal]:
    m = game.num_actions
    rows = [tuple(Fraction(int(a == b)) for b in range(m)) for a in range(m)]
    return _enumerate(game, i, rows, default_bound() if bound is None else bound)


def grid_signals(game: GameSpec, i: int, K: int, bound: int | None = None) -> Iterator[Signal]:
    GridSpec(K, len(game.pairs(i)), game.num_actions)
    return _enumerate(game, i, lattice_rows(game.num_actions, K), default_bound() if bound is None else bound)


def brute_force_optimal_signal(
    game: GameSpec, i: int, K: int, bound: int | None = None
) -> tuple[Signal, Fraction]:
    """Best IC grid signal for sender ``i``; the first maximiser in canonical order wins."""
    best = None
    for s in grid_signals(game, i, K, bound):
        if not is_incentive_compatible(game, s):
            continue
        v = signal_values(game, s)[1][i]
        if best is None or v > best[1]:
            best = (s, v)
    return best  # full revelation lies on every grid, so never None


def brute_force_best_deviation(
    game: GameSpec, profile: PureProfile, i: int, K: int, bound: int | None = None
) -> tuple[Fraction, Signal]:
    """Highest payoff sender ``i`` can reach by switching to any grid signal."""
    others = list(profile.signals)
    best = None
    for s in grid_signals(game, i, K, bound):
        others[i] = s
        choice = decide(game, others)
        payoff = sum((w * signal_values(game, others[j])[1][i] for j, w in choice.items()), ZERO)
        if best is None or payoff > best[0]:
            best = (payoff, s)
    return best
