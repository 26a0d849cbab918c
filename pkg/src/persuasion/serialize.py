"""JSON formats for games, signals, profiles and reports.

Every rational is written as a ``"p/q"`` string.  On input, ``"p/q"``
strings, decimal strings and JSON number literals are all read exactly.
"""

from __future__ import annotations

import json
from fractions import Fraction
from pathlib import Path

from .constructions import ImprovementTrace
from .equilibrium import DeviationWitness, MixedProfile, PureProfile, SupportAnalysis, ProfilePayoffs, Verdict
from .errors import GameError
from .model import GameSpec, Signal, ValidationReport, validate_signal
from .rational import format_rational as fr
from .rational import parse_rational


def loads(text: str, source: str = "<string>"):
    try:
        return json.loads(text, parse_float=Fraction)
    except json.JSONDecodeError as exc:
        raise GameError(f"{source}: line {exc.lineno} column {exc.colno}: {exc.msg}") from None


def dumps(doc) -> str:
    return json.dumps(doc, indent=2, ensure_ascii=False) + "\n"


def _read(path) -> object:
    path = Path(path)
    try:
        text = path.read_text(encoding="utf-8")
    except OSError as exc:
        raise GameError(f"{path}: {exc.strerror or exc}") from None
    return loads(text, str(path))


def _rat(value, where):
    try:
        return parse_rational(value)
    except (TypeError, ValueError) as exc:
        raise GameError(f"{where}: {exc}") from None


def _field(doc, key, where):
    if not isinstance(doc, dict) or key not in doc:
        raise GameError(f"{where}: missing field {key!r}")
    return doc[key]


def _labels(value, where) -> tuple[str, ...]:
    if not isinstance(value, list) or not all(isinstance(x, str) for x in value):
        raise GameError(f"{where}: expected a list of label strings")
    return tuple(value)


def _lookup(labels, label, where):
    try:
        return labels.index(label)
    except ValueError:
        raise GameError(f"{where}: unknown label {label!r}") from None


# games ------------------------------------------------------------------


def game_to_dict(game: GameSpec) -> dict:
    labels = list(game.sender_states) + [game.receiver_states]

    def table(t, states):
        return [
            {"action": game.actions[a], "state": states[w], "u": fr(t[a][w])}
            for a in range(game.num_actions)
            for w in range(len(states))
        ]

    return {
        "senders": [list(s) for s in game.sender_states],
        "receiver_states": list(game.receiver_states),
        "actions": list(game.actions),
        "prior": [
            {"state": [labels[c][x] for c, x in enumerate(key)], "p": fr(p)}
            for key, p in game.prior.items()
        ],
        "sender_utilities": [table(t, game.sender_states[i]) for i, t in enumerate(game.sender_utility)],
        "receiver_utility": table(game.receiver_utility, game.receiver_states),
    }


def _table_from(entries, actions, states, where):
    if not isinstance(entries, list):
        raise GameError(f"{where}: expected a list of {{action, state, u}} entries")
    cells = {}
    for n, e in enumerate(entries):
        w = f"{where}[{n}]"
        a = _lookup(actions, _field(e, "action", w), f"{w}.action")
        s = _lookup(states, _field(e, "state", w), f"{w}.state")
        if (a, s) in cells:
            raise GameError(f"{w}: duplicate entry for ({actions[a]!r}, {states[s]!r})")
        cells[a, s] = _rat(_field(e, "u", w), f"{w}.u")
    missing = [(actions[a], states[s]) for a in range(len(actions)) for s in range(len(states)) if (a, s) not in cells]
    if missing:
        raise GameError(f"{where}: table is not total, missing {missing}")
    return tuple(tuple(cells[a, s] for s in range(len(states))) for a in range(len(actions)))


def game_from_dict(doc, source: str = "game") -> GameSpec:
    senders = _field(doc, "senders", source)
    if not isinstance(senders, list):
        raise GameError(f"{source}.senders: expected a list of label lists")
    sender_states = tuple(_labels(s, f"{source}.senders[{i}]") for i, s in enumerate(senders))
    receiver_states = _labels(_field(doc, "receiver_states", source), f"{source}.receiver_states")
    actions = _labels(_field(doc, "actions", source), f"{source}.actions")
    spaces = list(sender_states) + [receiver_states]

    prior = {}
    entries = _field(doc, "prior", source)
    if not isinstance(entries, list):
        raise GameError(f"{source}.prior: expected a list of {{state, p}} entries")
    for n, e in enumerate(entries):
        w = f"{source}.prior[{n}]"
        state = _field(e, "state", w)
        if not isinstance(state, list) or len(state) != len(spaces):
            raise GameError(f"{w}.state: expected {len(spaces)} labels")
        key = tuple(_lookup(spaces[c], lab, f"{w}.state[{c}]") for c, lab in enumerate(state))
        if key in prior:
            raise GameError(f"{w}: duplicate prior entry for {state}")
        prior[key] = _rat(_field(e, "p", w), f"{w}.p")

    utils = _field(doc, "sender_utilities", source)
    if not isinstance(utils, list) or len(utils) != len(sender_states):
        raise GameError(f"{source}.sender_utilities: expected one table per sender")
    su = tuple(
        _table_from(t, actions, sender_states[i], f"{source}.sender_utilities[{i}]") for i, t in enumerate(utils)
    )
    ru = _table_from(_field(doc, "receiver_utility", source), actions, receiver_states, f"{source}.receiver_utility")
    try:
        return GameSpec(sender_states, receiver_states, actions, prior, su, ru)
    except GameError as exc:
        raise GameError(f"{source}: {exc}") from None


def load_game_file(path) -> GameSpec:
    return game_from_dict(_read(path), str(path))


def save_game(game: GameSpec, path) -> None:
    Path(path).write_text(dumps(game_to_dict(game)), encoding="utf-8")


# signals ----------------------------------------------------------------


def signal_to_dict(game: GameSpec, pi: Signal) -> dict:
    own = game.sender_states[pi.sender]
    return {
        "sender": pi.sender,
        "rows": [
            {
                "state": [own[wi], game.receiver_states[wr]],
                "dist": {game.actions[a]: fr(q) for a, q in enumerate(dist)},
            }
            for (wi, wr), dist in pi.rows.items()
        ],
    }


def signal_from_dict(game: GameSpec, doc, source: str = "signal") -> Signal:
    sender = _field(doc, "sender", source)
    if not isinstance(sender, int) or isinstance(sender, bool) or not 0 <= sender < game.n:
        raise GameError(f"{source}.sender: expected a sender index in 0..{game.n - 1}")
    rows_doc = _field(doc, "rows", source)
    if not isinstance(rows_doc, list):
        raise GameError(f"{source}.rows: expected a list")
    own = game.sender_states[sender]
    rows = {}
    for n, r in enumerate(rows_doc):
        w = f"{source}.rows[{n}]"
        state = _field(r, "state", w)
        if not isinstance(state, list) or len(state) != 2:
            raise GameError(f"{w}.state: expected [own state, receiver state]")
        key = (_lookup(own, state[0], f"{w}.state[0]"), _lookup(game.receiver_states, state[1], f"{w}.state[1]"))
        if key in rows:
            raise GameError(f"{w}: duplicate row {state}")
        dist = _field(r, "dist", w)
        if not isinstance(dist, dict):
            raise GameError(f"{w}.dist: expected an object mapping actions to probabilities")
        probs = [Fraction(0)] * game.num_actions
        for label, q in dist.items():
            probs[_lookup(game.actions, label, f"{w}.dist")] = _rat(q, f"{w}.dist[{label!r}]")
        rows[key] = tuple(probs)
    try:
        pi = Signal(sender, rows)
        validate_signal(game, pi)
    except GameError as exc:
        raise GameError(f"{source}: {exc}") from None
    return pi


def load_signal_file(game: GameSpec, path) -> Signal:
    return signal_from_dict(game, _read(path), str(path))


def trace_to_dict(game: GameSpec, i: int, trace: ImprovementTrace) -> dict:
    return {
        "base_action": game.actions[trace.base_action],
        "bad_state": game.receiver_states[trace.bad_state],
        "epsilon": fr(trace.epsilon),
        "cap": fr(trace.cap),
        "reroutes": [
            {
                "receiver_state": game.receiver_states[r.receiver_state],
                "witness": game.sender_states[i][r.witness],
                "action": game.actions[r.action],
                "probability": fr(r.probability),
            }
            for r in trace.reroutes
        ],
    }


# profiles ---------------------------------------------------------------


def load_mixed_profile(game: GameSpec, path) -> MixedProfile:
    """``{"strategies": [[{"signal": <file or inline>, "p": "1/2"}, ...], ...]}``.

    Signal file paths are resolved relative to the profile file.
    """
    path = Path(path)
    doc = _read(path)
    strategies = _field(doc, "strategies", str(path))
    if not isinstance(strategies, list):
        raise GameError(f"{path}.strategies: expected one list per sender")
    out = []
    for k, strat in enumerate(strategies):
        items = []
        for n, e in enumerate(strat):
            w = f"{path}.strategies[{k}][{n}]"
            ref = _field(e, "signal", w)
            if isinstance(ref, str):
                sig = load_signal_file(game, path.parent / ref)
            else:
                sig = signal_from_dict(game, ref, f"{w}.signal")
            items.append((sig, _rat(_field(e, "p", w), f"{w}.p")))
        out.append(tuple(items))
    return MixedProfile(tuple(out))


def profile_to_dict(game: GameSpec, profile) -> dict:
    if isinstance(profile, PureProfile):
        return {"strategies": [[{"signal": signal_to_dict(game, s), "p": "1/1"}] for s in profile.signals]}
    return {
        "strategies": [
            [{"signal": signal_to_dict(game, s), "p": fr(p)} for s, p in strat] for strat in profile.strategies
        ]
    }


# reports ----------------------------------------------------------------


def validation_to_dict(game: GameSpec, report: ValidationReport) -> dict:
    def player_state(player, w):
        if player == "R":
            return {"player": "R", "state": game.receiver_states[w]}
        return {"player": player, "state": game.sender_states[player][w]}

    return {
        "prior_ok": report.prior_ok,
        "assumption1_ok": report.assumption1_ok,
        "assumption1_violations": [player_state(p, w) for p, w in report.assumption1_violations],
        "assumption2_ok": report.assumption2_ok,
        "assumption2_violations": [
            {
                "i": i,
                "j": j,
                "state_j": game.sender_states[j][wj],
                "receiver_state": game.receiver_states[wr],
            }
            for i, j, wj, wr in report.assumption2_violations
        ],
    }


def payoffs_to_dict(payoffs: ProfilePayoffs) -> dict:
    return {
        "receiver": fr(payoffs.receiver_value),
        "senders": [fr(v) for v in payoffs.sender_values],
        "realizations": [
            {"indices": list(r.indices), "probability": fr(r.probability), "chosen": list(r.chosen)}
            for r in payoffs.realizations
        ],
    }


def support_to_dict(sa: SupportAnalysis) -> dict:
    return {
        "T": [[fr(v) for v in t] for t in sa.T],
        "tau_i": [fr(v) for v in sa.tau_i],
        "tau": fr(sa.tau),
        "all_tau_equal": sa.all_tau_equal,
        "never_chosen": [list(x) for x in sa.never_chosen],
    }


def witness_to_dict(game: GameSpec, w: DeviationWitness) -> dict:
    doc = {
        "deviator": w.deviator,
        "construction": w.construction,
        "old_payoff": fr(w.old_payoff),
        "new_payoff": fr(w.new_payoff),
        "gain": fr(w.gain),
        "new_signal": signal_to_dict(game, w.new_signal),
        "new_strategy": [{"signal": signal_to_dict(game, s), "p": fr(p)} for s, p in w.new_strategy],
    }
    if w.source is not None:
        doc["source"] = {"sender": w.source[0], "support_position": w.source[1]}
    if w.trace is not None:
        doc["trace"] = trace_to_dict(game, w.deviator, w.trace)
    if w.epsilon is not None:
        doc["epsilon"] = fr(w.epsilon)
    return doc


def verdict_to_dict(game: GameSpec, v: Verdict) -> dict:
    return {
        "verdict": v.kind,
        "witness": witness_to_dict(game, v.witness) if v.witness else None,
        "payoffs": payoffs_to_dict(v.payoffs),
        "support_analysis": support_to_dict(v.support),
        "validation": validation_to_dict(game, v.validation),
        "notes": list(v.notes),
    }
