"""The two motivating games, generated in code.

``policy(eps)``: two experts advise a policymaker on a policy that is
beneficial or harmful with probability 1/2 each.  Each expert is independently
unbiased with probability ``eps``; a biased expert always wants the policy
implemented (action ``P``), an unbiased one wants the correct action.  An
expert's own state is the expert's type together with the policy's effect.

``ecig``: a regulator decides whether to impose restrictions on e-cigarettes.
Expert 0 cares about cancer risk (H/U), expert 1 about who smokes more (M/W),
the regulator about youth uptake (Y/O).
"""

from __future__ import annotations

import re
from fractions import Fraction

from .errors import GameError
from .model import GameSpec
from .rational import parse_rational

POLICY_STATES = ("biased-beneficial", "biased-harmful", "unbiased-beneficial", "unbiased-harmful")
POLICY_EFFECTS = ("beneficial", "harmful")
POLICY_ACTIONS = ("P", "Q")


def policy(eps) -> GameSpec:
    eps = parse_rational(eps)
    if not 0 <= eps <= 1:
        raise GameError(f"policy: eps must lie in [0, 1], got {eps}")
    half = Fraction(1, 2)
    type_prob = {"biased": 1 - eps, "unbiased": eps}

    def index(kind, effect):
        return POLICY_STATES.index(f"{kind}-{POLICY_EFFECTS[effect]}")

    prior = {}
    for effect in (0, 1):
        for t0, p0 in type_prob.items():
            for t1, p1 in type_prob.items():
                p = half * p0 * p1
                if p:
                    prior[(index(t0, effect), index(t1, effect), effect)] = p

    # rows are actions P, Q; columns follow POLICY_STATES
    expert = ((1, 1, 1, 0), (0, 0, 0, 1))
    receiver = ((1, 0), (0, 1))
    return GameSpec(
        sender_states=(POLICY_STATES, POLICY_STATES),
        receiver_states=POLICY_EFFECTS,
        actions=POLICY_ACTIONS,
        prior=prior,
        sender_utility=(expert, expert),
        receiver_utility=receiver,
    )


ECIG_PRIOR = {
    # (expert 1 state, expert 0 state, regulator state) -> probability
    ("M", "H", "Y"): "0.18", ("M", "H", "O"): "0.08",
    ("M", "U", "Y"): "0.12", ("M", "U", "O"): "0.12",
    ("W", "H", "Y"): "0.12", ("W", "H", "O"): "0.12",
    ("W", "U", "Y"): "0.08", ("W", "U", "O"): "0.18",
}


def ecig() -> GameSpec:
    s0, s1, sr = ("H", "U"), ("M", "W"), ("Y", "O")
    prior = {
        (s0.index(h), s1.index(m), sr.index(y)): parse_rational(p)
        for (m, h, y), p in ECIG_PRIOR.items()
    }
    # actions: impose, status-quo
    return GameSpec(
        sender_states=(s0, s1),
        receiver_states=sr,
        actions=("impose", "status-quo"),
        prior=prior,
        sender_utility=(
            ((0, 1), (1, 0)),  # expert 0 wants restrictions iff U
            ((0, 1), (1, 0)),  # expert 1 wants restrictions iff W
        ),
        receiver_utility=((1, 0), (0, 1)),
    )


_POLICY_RE = re.compile(r"^policy\((?P<eps>[^()]*)\)$")


def builtin_game(name: str) -> GameSpec:
    """Resolve ``"ecig"`` or ``"policy(<eps>)"``; raise ``KeyError`` otherwise."""
    name = name.strip()
    if name == "ecig":
        return ecig()
    m = _POLICY_RE.match(name)
    if m:
        return policy(m.group("eps"))
    raise KeyError(name)


def is_builtin_name(name: str) -> bool:
    name = name.strip()
    return name == "ecig" or bool(_POLICY_RE.match(name))
