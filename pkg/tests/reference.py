"""Slow, direct re-implementations used as independent oracles in tests.

Everything here loops over full prior states and recomputes from scratch;
nothing is shared with the library beyond the data classes.
"""

from fractions import Fraction


def joint_table(game, pi):
    """{(a, full state): P(state) * pi(a | state)}."""
    out = {}
    i = pi.sender
    for state, p in game.prior.items():
        for a, q in enumerate(pi.rows[(state[i], state[-1])]):
            if q:
                out[(a, state)] = p * q
    return out


def message_probs(game, pi):
    out = {}
    for (a, _), m in joint_table(game, pi).items():
        out[a] = out.get(a, 0) + m
    return out


def receiver_belief(game, pi, a):
    table = joint_table(game, pi)
    total = sum(m for (b, _), m in table.items() if b == a)
    belief = {}
    for (b, state), m in table.items():
        if b == a:
            belief[state[-1]] = belief.get(state[-1], 0) + m / total
    return belief


def pair_belief(game, pi, a, i):
    table = joint_table(game, pi)
    total = sum(m for (b, _), m in table.items() if b == a)
    belief = {}
    for (b, state), m in table.items():
        if b == a:
            key = (state[i], state[-1])
            belief[key] = belief.get(key, 0) + m / total
    return belief


def taken_action(game, belief, recommended):
    utils = [sum(p * game.receiver_utility[b][w] for w, p in belief.items()) for b in range(game.num_actions)]
    best = max(utils)
    return recommended if utils[recommended] == best else utils.index(best)


def values(game, pi):
    """(receiver value, [sender values]) by summing over every (message, state)."""
    taken = {a: taken_action(game, receiver_belief(game, pi, a), a) for a in message_probs(game, pi)}
    vr = Fraction(0)
    vs = [Fraction(0)] * game.n
    for (a, state), m in joint_table(game, pi).items():
        b = taken[a]
        vr += m * game.receiver_utility[b][state[-1]]
        for k in range(game.n):
            vs[k] += m * game.sender_utility[k][b][state[k]]
    return vr, vs


def is_ic(game, pi):
    for a in message_probs(game, pi):
        belief = receiver_belief(game, pi, a)
        utils = [sum(p * game.receiver_utility[b][w] for w, p in belief.items()) for b in range(game.num_actions)]
        if utils[a] != max(utils):
            return False
    return True
