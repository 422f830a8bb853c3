"""Hypergraph trees: r-graphs with an edge order in which each new edge meets
the earlier ones inside a single earlier edge, in at most r-1 vertices."""

from __future__ import annotations

import random
from dataclasses import dataclass

from ..errors import TreeOrderError
from .graph import Hypergraph


@dataclass(frozen=True)
class HyperTree:
    hypergraph: Hypergraph
    order: tuple[tuple[int, ...], ...]
    parents: tuple[int | None, ...]


def tree_parents(order, r: int | None = None) -> list[int | None]:
    """Validate an edge order and return, for each edge, the smallest earlier
    index whose edge contains the overlap with all earlier edges.

    The first edge has parent ``None``.  Raises :class:`TreeOrderError`.
    """
    order = [tuple(sorted(e)) for e in order]
    if not order:
        return []
    r = len(order[0]) if r is None else r
    seen_edges = set()
    covered: set[int] = set()
    parents: list[int | None] = []
    for i, e in enumerate(order):
        if len(e) != r or len(set(e)) != r:
            raise TreeOrderError(f"edge {i} is not an {r}-set")
        if e in seen_edges:
            raise TreeOrderError(f"edge {i} repeats an earlier edge")
        seen_edges.add(e)
        if i == 0:
            parents.append(None)
            covered.update(e)
            continue
        overlap = covered.intersection(e)
        if len(overlap) > r - 1:
            raise TreeOrderError(f"edge {i} meets earlier edges in {len(overlap)} vertices")
        parent = next((j for j in range(i) if overlap <= set(order[j])), None)
        if parent is None:
            raise TreeOrderError(f"edge {i}: overlap {sorted(overlap)} lies in no single earlier edge")
        parents.append(parent)
        covered.update(e)
    return parents


def _sample_order(n: int, r: int, d: int, rng: random.Random, connected: bool):
    deg = [1] * r
    order = [tuple(range(r))]
    count = r
    while count < n:
        remaining = n - count
        # overlap size k leaves r-k fresh vertices, which must fit in what remains
        k_min = max(r - remaining, 0)
        lo = max(k_min, 1) if connected and r > 1 else k_min
        candidates = [[v for v in e if deg[v] < d] for e in order]
        options = [f for f in candidates if len(f) >= lo] if lo <= r - 1 else []
        if options:
            free = rng.choice(options)
            k = rng.randint(lo, min(r - 1, len(free)))
            if not connected and k_min == 0 and rng.random() < 0.2:
                k = 0
        elif k_min == 0:
            # degree cap exhausted: start a new component
            free, k = [], 0
        else:
            return None
        shared = sorted(rng.sample(free, k)) if k else []
        fresh = list(range(count, count + r - k))
        count += r - k
        deg.extend([0] * (r - k))
        edge = tuple(sorted(shared + fresh))
        for v in edge:
            deg[v] += 1
        order.append(edge)
    return order


def random_hypergraph_tree(n: int, r: int, d: int, seed: int,
                           connected: bool = True, retries: int = 50) -> HyperTree:
    """Sample an r-uniform hypergraph tree on exactly ``n`` vertices with max degree ``d``.

    Every vertex lies in some edge.  With ``connected=False`` a new edge may
    start a fresh component.  If the degree cap makes a connected tree
    impossible, new components are started anyway.  A sample that paints
    itself into a corner is redrawn, up to ``retries`` times.
    """
    if r < 1 or n < r:
        raise ValueError("need n >= r >= 1")
    if d < 1:
        raise ValueError("need d >= 1")
    rng = random.Random(seed)
    for _ in range(retries):
        order = _sample_order(n, r, d, rng, connected)
        if order is not None:
            break
    else:
        raise ValueError("degree cap too tight for the requested size")
    perm = list(range(n))
    rng.shuffle(perm)
    order = tuple(tuple(sorted(perm[v] for v in e)) for e in order)
    parents = tuple(tree_parents(order, r))
    return HyperTree(Hypergraph(n, r, frozenset(order)), order, parents)
