"""Exact two-phase simplex over rationals and the single-sender persuasion LP."""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Sequence

from .model import ZERO, GameSpec, Signal

OPTIMAL = "optimal"
INFEASIBLE = "infeasible"
UNBOUNDED = "unbounded"


@dataclass(frozen=True)
class LPProblem:
    """Maximise ``objective . x`` subject to

    * ``row . x == rhs`` for every ``(row, rhs)`` in ``equalities``
    * ``row . x >= rhs`` for every ``(row, rhs)`` in ``inequalities``
    * ``x_k >= 0`` wherever ``nonnegative[k]`` (all variables by default).
    """

    variables: tuple[str, ...]
    objective: tuple[Fraction, ...]
    equalities: tuple[tuple[tuple[Fraction, ...], Fraction], ...] = ()
    inequalities: tuple[tuple[tuple[Fraction, ...], Fraction], ...] = ()
    nonnegative: tuple[bool, ...] | None = None

    def __post_init__(self):
        n = len(self.variables)
        conv = lambda rows: tuple((tuple(Fraction(c) for c in r), Fraction(b)) for r, b in rows)
        object.__setattr__(self, "variables", tuple(self.variables))
        object.__setattr__(self, "objective", tuple(Fraction(c) for c in self.objective))
        object.__setattr__(self, "equalities", conv(self.equalities))
        object.__setattr__(self, "inequalities", conv(self.inequalities))
        if self.nonnegative is None:
            object.__setattr__(self, "nonnegative", (True,) * n)
        else:
            object.__setattr__(self, "nonnegative", tuple(bool(x) for x in self.nonnegative))
        if len(self.objective) != n or len(self.nonnegative) != n:
            raise ValueError("objective and nonnegativity flags need one entry per variable")
        for r, _ in self.equalities + self.inequalities:
            if len(r) != n:
                raise ValueError("every constraint row needs one coefficient per variable")


@dataclass(frozen=True)
class LPSolution:
    status: str
    assignment: dict[str, Fraction] = field(default_factory=dict)
    objective_value: Fraction | None = None
    basis: tuple[str, ...] = ()
    reduced_costs: dict[str, Fraction] = field(default_factory=dict)
    pivots: int = 0


class _Tableau:
    def __init__(self, rows, rhs, basis):
        self.rows = rows
        self.rhs = rhs
        self.basis = basis
        self.pivots = 0

    def reduced_costs(self, cost):
        ncol = len(cost)
        out = list(cost)
        for i, bv in enumerate(self.basis):
            cb = cost[bv]
            if cb:
                row = self.rows[i]
                for j in range(ncol):
                    if row[j]:
                        out[j] -= cb * row[j]
        return out

    def pivot(self, r, c):
        prow = self.rows[r]
        piv = prow[c]
        if piv != 1:
            prow[:] = [x / piv for x in prow]
            self.rhs[r] /= piv
        for i, row in enumerate(self.rows):
            if i != r and row[c]:
                f = row[c]
                row[:] = [x - f * y for x, y in zip(row, prow)]
                self.rhs[i] -= f * self.rhs[r]
        self.basis[r] = c
        self.pivots += 1

    def run(self, cost, allowed):
        """Bland's rule: lowest-index improving column, lowest-index leaving variable."""
        while True:
            red = self.reduced_costs(cost)
            entering = next((j for j in allowed if red[j] > 0), None)
            if entering is None:
                return OPTIMAL
            best = None
            for i, row in enumerate(self.rows):
                if row[entering] > 0:
                    key = (self.rhs[i] / row[entering], self.basis[i])
                    if best is None or key < best[0]:
                        best = (key, i)
            if best is None:
                return UNBOUNDED
            self.pivot(best[1], entering)


def solve_lp(problem: LPProblem) -> LPSolution:
    n = len(problem.variables)
    # structural columns: x_k, plus a mirrored column for every free variable
    columns: list[tuple[int, int]] = [(k, 1) for k in range(n)]
    columns += [(k, -1) for k in range(n) if not problem.nonnegative[k]]
    names = [problem.variables[k] if s > 0 else f"-{problem.variables[k]}" for k, s in columns]

    cons = [(r, b, None) for r, b in problem.equalities]
    cons += [(r, b, "surplus") for r, b in problem.inequalities]
    n_struct = len(columns)
    n_surplus = sum(1 for *_, kind in cons if kind)
    m = len(cons)
    ncol = n_struct + n_surplus + m
    art0 = n_struct + n_surplus

    rows, rhs = [], []
    s = n_struct
    for i, (coef, b, kind) in enumerate(cons):
        row = [coef[k] * sgn for k, sgn in columns] + [ZERO] * (n_surplus + m)
        if kind:
            names.append(f"surplus[{i}]")
            row[s] = Fraction(-1)
            s += 1
        if b < 0:
            row = [-x for x in row]
            b = -b
        row[art0 + i] = Fraction(1)
        rows.append(row)
        rhs.append(Fraction(b))
    names += [f"artificial[{i}]" for i in range(m)]

    tab = _Tableau(rows, rhs, [art0 + i for i in range(m)])
    phase1 = [ZERO] * art0 + [Fraction(-1)] * m
    tab.run(phase1, range(ncol))
    if any(tab.rhs[i] for i, bv in enumerate(tab.basis) if bv >= art0):
        return LPSolution(INFEASIBLE, pivots=tab.pivots)

    # drive zero-level artificials out of the basis; drop redundant rows
    i = 0
    while i < len(tab.basis):
        if tab.basis[i] >= art0:
            j = next((j for j in range(art0) if tab.rows[i][j]), None)
            if j is None:
                del tab.rows[i], tab.rhs[i], tab.basis[i]
                continue
            tab.pivot(i, j)
        i += 1

    cost = [problem.objective[k] * sgn for k, sgn in columns] + [ZERO] * (n_surplus + m)
    status = tab.run(cost, range(art0))
    if status == UNBOUNDED:
        return LPSolution(UNBOUNDED, pivots=tab.pivots)

    values = [ZERO] * ncol
    for i, bv in enumerate(tab.basis):
        values[bv] = tab.rhs[i]
    assignment = {v: ZERO for v in problem.variables}
    for col, (k, sgn) in enumerate(columns):
        assignment[problem.variables[k]] += sgn * values[col]
    objective = sum((c * assignment[v] for v, c in zip(problem.variables, problem.objective)), ZERO)
    red = tab.reduced_costs(cost)
    return LPSolution(
        OPTIMAL,
        assignment,
        objective,
        tuple(names[b] for b in tab.basis),
        {names[j]: red[j] for j in range(art0) if j not in tab.basis},
        tab.pivots,
    )


def check_feasible(problem: LPProblem, assignment: dict[str, Fraction]) -> bool:
    x = [assignment[v] for v in problem.variables]
    dot = lambda r: sum((c * v for c, v in zip(r, x)), ZERO)
    return (
        all(dot(r) == b for r, b in problem.equalities)
        and all(dot(r) >= b for r, b in problem.inequalities)
        and all(v >= 0 for v, nn in zip(x, problem.nonnegative) if nn)
    )


def persuasion_lp(game: GameSpec, i: int) -> tuple[LPProblem, list[tuple[tuple[int, int], int]]]:
    """Obedience LP for sender ``i``; also returns the ``((w_i, w_R), a)`` index of each variable."""
    game.sender_index(i)
    marg = game._pair_marginals[i]
    m = game.num_actions
    ur, ui = game.receiver_utility, game.sender_utility[i]
    index = [(k, a) for k in marg for a in range(m)]
    names = tuple(f"x[{game.sender_states[i][k[0]]},{game.receiver_states[k[1]]},{game.actions[a]}]" for k, a in index)

    objective = [ui[a][k[0]] for k, a in index]
    eqs = []
    for k, p in marg.items():
        eqs.append(([Fraction(1) if kk == k else ZERO for kk, _ in index], p))
    ineqs = []
    for a in range(m):
        for b in range(m):
            if a != b:
                row = [ur[a][kk[1]] - ur[b][kk[1]] if aa == a else ZERO for kk, aa in index]
                ineqs.append((row, ZERO))
    return LPProblem(names, tuple(objective), tuple(eqs), tuple(ineqs)), index


def optimal_signal(game: GameSpec, i: int) -> tuple[Signal, Fraction]:
    """Sender-optimal IC signal for ``i`` facing the receiver alone."""
    problem, index = persuasion_lp(game, i)
    sol = solve_lp(problem)
    if sol.status != OPTIMAL:  # pragma: no cover - full revelation is always feasible
        raise RuntimeError(f"persuasion LP unexpectedly {sol.status}")
    marg = game._pair_marginals[i]
    rows = {k: [ZERO] * game.num_actions for k in marg}
    for name, (k, a) in zip(problem.variables, index):
        rows[k][a] = sol.assignment[name] / marg[k]
    return Signal(i, {k: tuple(v) for k, v in rows.items()}), sol.objective_value
