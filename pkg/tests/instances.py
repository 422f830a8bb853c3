"""Seeded instance generators shared by several test modules."""

from __future__ import annotations

import random

from sizeramsey.expander import is_expanding
from sizeramsey.hypercore import Graph


def random_graph(n: int, p: float, seed: int) -> Graph:
    rng = random.Random(seed)
    return Graph.from_edges(n, [(u, v) for u in range(n) for v in range(u + 1, n) if rng.random() < p])


def expanding_hosts(count: int, seed: int = 0, max_n: int = 14):
    """``(G, m, d)`` with G certified ``(m, d+2)``-expanding, m in {2,3,4}, d in {1,2,3}.

    Parameters are drawn first; graphs are resampled (denser each time)
    until one certifies.  Parameter pairs no graph on ``max_n`` vertices can
    satisfy are skipped.
    """
    rng = random.Random(seed)
    out = []
    while len(out) < count:
        n = rng.randint(8, max_n)
        m, d = rng.randint(2, 4), rng.randint(1, 3)
        if m + m * (d + 2) > n:
            continue
        for attempt in range(30):
            g = random_graph(n, min(0.55 + 0.02 * attempt, 0.98), rng.randrange(10**9))
            if is_expanding(g, m, d + 2).verdict:
                out.append((g, m, d))
                break
    return out
