"""Seeded random instance generation for the test harness and the CLI."""

from __future__ import annotations

import random

from .core import Config, Transition, Vass


def random_vass(
    rng: random.Random,
    dim: int = 2,
    max_states: int = 4,
    max_transitions: int = 6,
    max_entry: int = 2,
) -> Vass:
    n_states = rng.randint(1, max_states)
    states = tuple(f"q{i}" for i in range(n_states))
    q_in = rng.choice(states)
    q_out = rng.choice(states)
    n_trans = rng.randint(0, max_transitions)
    transitions = tuple(
        Transition(
            f"t{i + 1}",
            rng.choice(states),
            tuple(rng.randint(-max_entry, max_entry) for _ in range(dim)),
            rng.choice(states),
        )
        for i in range(n_trans)
    )
    return Vass(dim, states, q_in, q_out, transitions)


def random_config(rng: random.Random, dim: int, max_value: int = 3) -> Config:
    return tuple(rng.randint(0, max_value) for _ in range(dim))


def random_instance(
    rng: random.Random,
    dim: int = 2,
    max_states: int = 4,
    max_transitions: int = 6,
    max_entry: int = 2,
    max_value: int = 3,
) -> tuple[Vass, Config, Config]:
    g = random_vass(rng, dim, max_states, max_transitions, max_entry)
    return g, random_config(rng, dim, max_value), random_config(rng, dim, max_value)
