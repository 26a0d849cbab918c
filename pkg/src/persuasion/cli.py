"""Command-line front end.

Exit codes: 0 on success, 1 on domain errors (bad input, failed
assumptions, nothing to improve, size limits), 2 on usage errors.
"""

from __future__ import annotations

import argparse
import sys
from pathlib import Path

from . import serialize as ser
from .builtin import builtin_game, is_builtin_name
from .constructions import improve, simulate
from .equilibrium import PureProfile, check_equilibrium, profile_payoffs
from .errors import PersuasionError
from .lp import optimal_signal, persuasion_lp, solve_lp
from .model import (
    GameSpec,
    Signal,
    full_info_signal,
    is_fully_informative,
    is_incentive_compatible,
    message_probability,
    posterior,
    responses,
    signal_values,
    validate_game,
)
from .oracle import GridSpec, brute_force_optimal_signal, default_bound
from .rational import approx, format_rational as fr, parse_rational


def load_game(source: str) -> GameSpec:
    """Built-in name (``ecig``, ``policy(1/10)``) or path to a game file."""
    if is_builtin_name(source):
        return builtin_game(source)
    return ser.load_game_file(source)


def show(x) -> str:
    return f"{fr(x)} ({approx(x)})"


def _signal_lines(game: GameSpec, pi: Signal) -> list[str]:
    own = game.sender_states[pi.sender]
    out = []
    for (wi, wr), dist in pi.rows.items():
        parts = ", ".join(f"{game.actions[a]}: {fr(q)}" for a, q in enumerate(dist) if q)
        out.append(f"  ({own[wi]}, {game.receiver_states[wr]}) -> {parts}")
    return out


def _values_lines(game: GameSpec, pi: Signal) -> list[str]:
    vr, vs = signal_values(game, pi)
    lines = [f"receiver value: {show(vr)}"]
    lines += [f"sender {k} value: {show(v)}" for k, v in enumerate(vs)]
    return lines


def _values_doc(game: GameSpec, pi: Signal) -> dict:
    vr, vs = signal_values(game, pi)
    return {"receiver_value": fr(vr), "sender_values": [fr(v) for v in vs]}


def _write_signal(path, doc) -> None:
    if path:
        Path(path).write_text(ser.dumps(doc), encoding="utf-8")


# commands ---------------------------------------------------------------


def cmd_validate(args):
    game = load_game(args.game)
    report = validate_game(game)
    lines = [
        f"senders: {game.n}, actions: {', '.join(game.actions)}",
        "prior: sums to 1",
        "Assumption 1 (unique preferred action): " + ("holds" if report.assumption1_ok else "VIOLATED"),
    ]
    for player, w in report.assumption1_violations:
        label = game.receiver_states[w] if player == "R" else game.sender_states[player][w]
        who = "receiver" if player == "R" else f"sender {player}"
        lines.append(f"  {who} has tied preferred actions at {label!r}")
    lines.append("Assumption 2 (aligned state always possible): " + ("holds" if report.assumption2_ok else "VIOLATED"))
    for i, j, wj, wr in report.assumption2_violations:
        lines.append(
            f"  sender {i} has no state aligned with the receiver given sender {j} "
            f"at {game.sender_states[j][wj]!r} and receiver state {game.receiver_states[wr]!r}"
        )
    if not report.ok:
        lines.append("WARNING: modelling assumptions fail; refutation is not guaranteed")
    return lines, ser.validation_to_dict(game, report), 0 if report.ok else 1


def cmd_analyze(args):
    game = load_game(args.game)
    pi = ser.load_signal_file(game, args.signal)
    ic = is_incentive_compatible(game, pi)
    fi = is_fully_informative(game, pi)
    lines = [f"signal of sender {pi.sender}"] + _signal_lines(game, pi)
    messages = []
    for a, taken in responses(game, pi).items():
        belief = posterior(game, pi, a).receiver_marginal()
        prob = message_probability(game, pi, a)
        dist = ", ".join(f"{game.receiver_states[w]}: {fr(q)}" for w, q in sorted(belief.items()))
        lines.append(
            f"message {game.actions[a]}: probability {show(prob)}, receiver belief {{{dist}}}, "
            f"action taken {game.actions[taken]}"
        )
        messages.append(
            {
                "message": game.actions[a],
                "probability": fr(prob),
                "receiver_posterior": {game.receiver_states[w]: fr(q) for w, q in sorted(belief.items())},
                "action": game.actions[taken],
            }
        )
    lines += _values_lines(game, pi)
    lines.append("incentive compatible: " + ("yes" if ic else "no"))
    for a, b in ic.violations:
        lines.append(f"  after {game.actions[a]} the receiver strictly prefers {game.actions[b]}")
    lines.append("fully informative: " + ("yes" if fi else "no"))
    if not fi:
        a, w = fi.counterexample
        lines.append(f"  {game.actions[a]} is recommended at {game.receiver_states[w]!r} where it is not optimal")
    doc = {
        "sender": pi.sender,
        "messages": messages,
        **_values_doc(game, pi),
        "incentive_compatible": ic.ok,
        "ic_violations": [[game.actions[a], game.actions[b]] for a, b in ic.violations],
        "fully_informative": fi.ok,
        "counterexample": None
        if fi.ok
        else {"action": game.actions[fi.counterexample[0]], "receiver_state": game.receiver_states[fi.counterexample[1]]},
    }
    return lines, doc, 0


def cmd_optimal(args):
    game = load_game(args.game)
    problem, _ = persuasion_lp(game, args.sender)
    sol = solve_lp(problem)
    pi, value = optimal_signal(game, args.sender)
    summary = {
        "variables": len(problem.variables),
        "equalities": len(problem.equalities),
        "inequalities": len(problem.inequalities),
        "pivots": sol.pivots,
    }
    lines = [
        f"optimal signal for sender {args.sender} (single sender facing the receiver)",
        *_signal_lines(game, pi),
        f"optimal value: {show(value)}",
        *_values_lines(game, pi),
        "LP: {variables} variables, {equalities} equalities, {inequalities} obedience constraints, "
        "{pivots} pivots".format(**summary),
    ]
    sig = ser.signal_to_dict(game, pi)
    _write_signal(args.out, sig)
    return lines, {"signal": sig, "value": fr(value), **_values_doc(game, pi), "lp": summary}, 0


def cmd_simulate(args):
    game = load_game(args.game)
    source = ser.load_signal_file(game, args.signal)
    pi = simulate(game, args.sender, source)
    lines = [f"sender {args.sender} simulating sender {source.sender}", *_signal_lines(game, pi), *_values_lines(game, pi)]
    sig = ser.signal_to_dict(game, pi)
    _write_signal(args.out, sig)
    return lines, {"signal": sig, **_values_doc(game, pi)}, 0


def cmd_improve(args):
    game = load_game(args.game)
    source = ser.load_signal_file(game, args.signal)
    pi, trace = improve(game, args.sender, source, args.epsilon)
    old_r, old_s = signal_values(game, source)
    new_r, new_s = signal_values(game, pi)
    i = args.sender
    lines = [
        f"sender {i} improving on sender {source.sender}'s signal",
        f"recommendation {game.actions[trace.base_action]!r} is wrong at {game.receiver_states[trace.bad_state]!r}",
        f"epsilon {fr(trace.epsilon)} (cap {fr(trace.cap)})",
    ]
    for r in trace.reroutes:
        where = f"  at ({game.sender_states[i][r.witness]}, {game.receiver_states[r.receiver_state]})"
        if r.action == trace.base_action:
            lines.append(f"{where} keep {game.actions[r.action]} (already the receiver's optimum)")
        else:
            lines.append(
                f"{where} move {fr(r.probability)} of {game.actions[trace.base_action]} to {game.actions[r.action]}"
            )
    lines += _signal_lines(game, pi)
    lines.append(f"receiver value: {show(old_r)} -> {show(new_r)}")
    lines.append(f"sender {i} value: {show(old_s[i])} -> {show(new_s[i])}")
    sig = ser.signal_to_dict(game, pi)
    sig["trace"] = ser.trace_to_dict(game, i, trace)
    _write_signal(args.out, sig)
    doc = {
        "signal": sig,
        "before": {"receiver_value": fr(old_r), "sender_value": fr(old_s[i])},
        "after": {"receiver_value": fr(new_r), "sender_value": fr(new_s[i])},
    }
    return lines, doc, 0


def cmd_check_ne(args):
    game = load_game(args.game)
    if args.mixed:
        profile = ser.load_mixed_profile(game, args.mixed)
    else:
        signals = tuple(ser.load_signal_file(game, f) for f in args.signals)
        profile = PureProfile(signals)
    verdict = check_equilibrium(game, profile)
    sa, pay = verdict.support, verdict.payoffs
    lines = [f"verdict: {verdict.kind}", f"receiver value: {show(pay.receiver_value)}"]
    lines += [f"sender {k} payoff: {show(v)}" for k, v in enumerate(pay.sender_values)]
    lines.append(f"tau: {fr(sa.tau)}; per-sender tau: {', '.join(fr(t) for t in sa.tau_i)}")
    w = verdict.witness
    if w:
        lines.append(
            f"witness: sender {w.deviator} deviates via {w.construction}, "
            f"payoff {show(w.old_payoff)} -> {show(w.new_payoff)}"
        )
        lines += _signal_lines(game, w.new_signal)
    lines += [f"note: {n}" for n in verdict.notes]
    return lines, ser.verdict_to_dict(game, verdict), 0


def cmd_oracle(args):
    game = load_game(args.game)
    bound = args.bound if args.bound is not None else default_bound()
    grid = GridSpec(args.resolution, len(game.pairs(args.sender)), game.num_actions)
    pi, value = brute_force_optimal_signal(game, args.sender, args.resolution, bound)
    lines = [
        f"best IC signal for sender {args.sender} on the resolution-{args.resolution} grid "
        f"({grid.count} candidates)",
        *_signal_lines(game, pi),
        f"value: {show(value)}",
    ]
    sig = ser.signal_to_dict(game, pi)
    _write_signal(args.out, sig)
    return lines, {"signal": sig, "value": fr(value), "resolution": args.resolution, "candidates": grid.count}, 0


def cmd_examples(args):
    lines, docs = [], {}
    for name in args.names:
        game = builtin_game(name)
        full = PureProfile(tuple(full_info_signal(game, k) for k in range(game.n)))
        pay = profile_payoffs(game, full)
        lp = [optimal_signal(game, k)[1] for k in range(game.n)]
        lines.append(f"{name}:")
        lines.append(f"  full-information profile: receiver {show(pay.receiver_value)}")
        lines += [f"    sender {k} {show(v)}" for k, v in enumerate(pay.sender_values)]
        lines += [f"  single-sender optimum for sender {k}: {show(v)}" for k, v in enumerate(lp)]
        docs[name] = {
            "full_info_profile": {"receiver": fr(pay.receiver_value), "senders": [fr(v) for v in pay.sender_values]},
            "single_sender_optimum": [fr(v) for v in lp],
        }
    return lines, docs, 0


# parser -----------------------------------------------------------------


def _sender(text: str) -> int:
    try:
        value = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"sender index must be an integer, got {text!r}") from None
    if value < 0:
        raise argparse.ArgumentTypeError("sender index must be non-negative")
    return value


def _rational(text: str):
    try:
        return parse_rational(text)
    except (TypeError, ValueError) as exc:
        raise argparse.ArgumentTypeError(str(exc)) from None


def _positive(text: str) -> int:
    try:
        value = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected a positive integer, got {text!r}") from None
    if value < 1:
        raise argparse.ArgumentTypeError(f"expected a positive integer, got {text!r}")
    return value


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--json", action="store_true", default=argparse.SUPPRESS, help="machine-readable output")

    parser = argparse.ArgumentParser(
        prog="persuasion", description="Exact analysis of competing-senders persuasion games."
    )
    parser.add_argument("--json", action="store_true", help="machine-readable output")
    sub = parser.add_subparsers(dest="command", required=True, metavar="COMMAND")
    game_help = "game file, or a built-in: ecig, policy(<eps>)"

    def add(name, fn, help_text):
        p = sub.add_parser(name, parents=[common], help=help_text, description=help_text)
        p.set_defaults(handler=fn)
        return p

    p = add("validate", cmd_validate, "check the prior and both modelling assumptions")
    p.add_argument("game", help=game_help)

    p = add("analyze", cmd_analyze, "posteriors, values, IC and informativeness of a signal")
    p.add_argument("game", help=game_help)
    p.add_argument("signal", help="signal file")

    p = add("optimal", cmd_optimal, "sender-optimal IC signal from the obedience LP")
    p.add_argument("game", help=game_help)
    p.add_argument("--sender", type=_sender, required=True)
    p.add_argument("--out", help="write the signal JSON here")

    p = add("simulate", cmd_simulate, "reproduce another sender's signal from own information")
    p.add_argument("game", help=game_help)
    p.add_argument("signal", help="signal file of the sender being simulated")
    p.add_argument("--sender", type=_sender, required=True, help="simulating sender")
    p.add_argument("--out", help="write the signal JSON here")

    p = add("improve", cmd_improve, "strictly improve on another sender's signal")
    p.add_argument("game", help=game_help)
    p.add_argument("signal", help="signal file of the sender being improved on")
    p.add_argument("--sender", type=_sender, required=True, help="improving sender")
    p.add_argument("--epsilon", type=_rational, help="perturbation size as p/q (default: half the cap)")
    p.add_argument("--out", help="write the signal JSON with its trace here")

    p = add("check-ne", cmd_check_ne, "search for a profitable deviation from a profile")
    p.add_argument("game", help=game_help)
    group = p.add_mutually_exclusive_group(required=True)
    group.add_argument("--signals", nargs="+", metavar="FILE", help="one signal file per sender")
    group.add_argument("--mixed", metavar="FILE", help="mixed-profile file")

    p = add("oracle", cmd_oracle, "brute-force optimum over a lattice of signals")
    p.add_argument("game", help=game_help)
    p.add_argument("--sender", type=_sender, required=True)
    p.add_argument("--resolution", "-K", type=_positive, required=True)
    p.add_argument("--bound", type=_positive, help="maximum number of candidate signals")
    p.add_argument("--out", help="write the signal JSON here")

    p = add("examples", cmd_examples, "headline numbers of the built-in games")
    p.add_argument("names", nargs="*", default=["policy(1/10)", "ecig"], metavar="NAME")
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        lines, doc, code = args.handler(args)
    except KeyError as exc:
        print(f"error: unknown built-in game {exc.args[0]!r}", file=sys.stderr)
        return 1
    except PersuasionError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    if args.json:
        sys.stdout.write(ser.dumps(doc))
    else:
        print("\n".join(lines))
    return code


if __name__ == "__main__":  # pragma: no cover
    sys.exit(main())
