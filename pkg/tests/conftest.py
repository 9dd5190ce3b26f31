"""Shared fixtures: the golden three-counter system and derived objects."""

import random

import pytest

from vasskit.core import OMEGA, Transition, Vass


def make_gex() -> Vass:
    """The running four-state, nine-transition example of dimension 3."""
    return Vass(
        dim=3,
        states=("q_in", "q_out", "p", "q"),
        q_in="q_in",
        q_out="q_out",
        transitions=(
            Transition("t1", "q_in", (0, 2, 0), "q_in"),
            Transition("t2", "q_in", (2, 2, -1), "p"),
            Transition("t3", "q_in", (1, 0, 0), "q_out"),
            Transition("t4", "q_in", (1, 0, -2), "q_out"),
            Transition("t5", "p", (1, 0, -2), "q_in"),
            Transition("t6", "q_out", (1, -1, 0), "q_out"),
            Transition("t7", "q_out", (1, -1, -2), "q"),
            Transition("t8", "q", (-2, -1, 0), "q"),
            Transition("t9", "q", (0, 0, 0), "q_out"),
        ),
    )


A1 = (0, 2, 0)
A2 = (2, 2, -1)
A3 = (1, 0, 0)
A4 = (1, 0, -2)
A5 = (1, 0, -2)
A6 = (1, -1, 0)
A7 = (1, -1, -2)
A8 = (-2, -1, 0)
A9 = (0, 0, 0)


def family_one(n: int) -> list[tuple[int, int, int]]:
    """First accepted word family: a1^(2+3n) a3 a6^(1+4n) a7 a8^(1+2n) a9."""
    return [A1] * (2 + 3 * n) + [A3] + [A6] * (1 + 4 * n) + [A7] + [A8] * (1 + 2 * n) + [A9]


def family_two(n: int) -> list[tuple[int, int, int]]:
    """Second family: a1^(2+3n) a3 a6^(4n) a7 a8^(1+2n) a9 a6."""
    return [A1] * (2 + 3 * n) + [A3] + [A6] * (4 * n) + [A7] + [A8] * (1 + 2 * n) + [A9] + [A6]


@pytest.fixture(scope="session")
def gex() -> Vass:
    return make_gex()


@pytest.fixture(scope="session")
def g1(gex) -> Vass:
    """Left strongly connected piece: states q_in, p with t1, t2, t5."""
    from vasskit.core import induced_vass

    return induced_vass(gex, ["q_in", "p"], "q_in", "q_in")


@pytest.fixture(scope="session")
def g2(gex) -> Vass:
    """Right strongly connected piece: states q_out, q with t6..t9."""
    from vasskit.core import induced_vass

    return induced_vass(gex, ["q_out", "q"], "q_out", "q_out")


@pytest.fixture(scope="session")
def g6() -> Vass:
    """Single state q_out with the (1,-1,0) loop."""
    return Vass(3, ("q_out",), "q_out", "q_out", (Transition("t6", "q_out", (1, -1, 0), "q_out"),))


@pytest.fixture(scope="session")
def g7() -> Vass:
    """Single state q with the (-2,-1,0) loop."""
    return Vass(3, ("q",), "q", "q", (Transition("t8", "q", (-2, -1, 0), "q"),))


@pytest.fixture
def rng() -> random.Random:
    return random.Random(0xC0FFEE)


W = OMEGA
