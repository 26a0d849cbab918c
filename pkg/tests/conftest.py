from fractions import Fraction

import pytest
from hypothesis import settings

from persuasion import Signal, ecig, policy

settings.register_profile("default", max_examples=60, deadline=None)
settings.load_profile("default")

F = Fraction


@pytest.fixture(scope="session")
def ecig_game():
    return ecig()


@pytest.fixture(scope="session")
def policy_game():
    return policy(F(1, 10))


@pytest.fixture(scope="session")
def policy0_game():
    return policy(0)


def pooling_signal(game, sender):
    """Biased types always recommend P; unbiased types recommend the correct action."""
    states = game.sender_states[sender]

    def row(wi, wr):
        if states[wi].startswith("biased"):
            return (1, 0)
        return (1, 0) if wr == 0 else (0, 1)

    return Signal.from_function(game, sender, row)


ACCEPTANCE: dict[int, tuple[bool, str, float, str]] = {}


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for number in sorted(ACCEPTANCE):
        ok, title, elapsed, detail = ACCEPTANCE[number]
        line = f"criterion {number:>2}: {'PASS' if ok else 'FAIL'}  {title}  ({elapsed:.2f}s)"
        if detail:
            line += f"  [{detail}]"
        terminalreporter.write_line(line)
