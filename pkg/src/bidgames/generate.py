"""Seeded random instances for stress runs and oracle-agreement suites."""

from __future__ import annotations

import random

from .budgets import Budget
from .games import BiddingGame, make_game


def random_game(
    rng: random.Random,
    max_vertices: int = 5,
    max_k: int = 5,
    max_priority: int = 3,
    max_sinks: int = 2,
    max_degree: int = 4,
) -> BiddingGame:
    """Draw a small frugal-parity game.

    Every non-sink gets between one and max_degree outgoing edges into the
    full id pool (self-loops allowed), so the arena is always total. Sink
    budget requirements are drawn uniformly over the budget chain.
    """
    k = rng.randint(1, max_k)
    n_vertices = rng.randint(1, max_vertices)
    n_sinks = rng.randint(0, max_sinks)
    vs = [f"v{i}" for i in range(n_vertices)]
    sinks = {f"s{i}": Budget(rng.randint(0, 2 * k + 1)) for i in range(n_sinks)}
    ids = vs + sorted(sinks)
    edges = []
    for v in vs:
        degree = rng.randint(1, min(max_degree, len(ids)))
        edges.extend((v, u) for u in rng.sample(ids, degree))
    vertices = {v: rng.randint(1, max_priority) for v in vs}
    return make_game(k=k, vertices=vertices, sinks=sinks, edges=edges)
