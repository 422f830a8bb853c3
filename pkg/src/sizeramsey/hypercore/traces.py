"""Build traces for graphs grown by leaves and long paths.

A trace starts from a single vertex ``0``.  A ``leaf`` step hangs a fresh
vertex on an existing one; a ``path`` step joins two distinct existing
vertices by a new path of a given length (at least ``l``), whose interior
vertices get consecutive fresh ids in order from ``u`` to ``v``.  Every
vertex must keep degree at most ``d``.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from typing import Union

from ..errors import TraceError
from .graph import Graph


@dataclass(frozen=True)
class AddLeaf:
    at: int


@dataclass(frozen=True)
class AddPath:
    u: int
    v: int
    length: int


Step = Union[AddLeaf, AddPath]


@dataclass(frozen=True)
class BuildTrace:
    d: int
    l: int
    steps: tuple

    def __post_init__(self):
        object.__setattr__(self, "steps", tuple(self.steps))

    @property
    def n(self) -> int:
        count = 1
        for s in self.steps:
            count += 1 if isinstance(s, AddLeaf) else s.length - 1
        return count


def replay(trace: BuildTrace, check: bool = True):
    """Yield ``(step, new_vertex_ids, edges_added)`` while building the graph.

    With ``check`` every class condition is enforced and a violation raises
    :class:`TraceError` naming the offending step.
    """
    count = 1
    deg = [0]
    edges = set()

    def add_edge(a, b, idx):
        key = (a, b) if a < b else (b, a)
        if key in edges:
            raise TraceError(f"step {idx}: duplicate edge {key}")
        edges.add(key)
        deg[a] += 1
        deg[b] += 1
        if check and (deg[a] > trace.d or deg[b] > trace.d):
            raise TraceError(f"step {idx}: degree cap {trace.d} exceeded")

    for idx, step in enumerate(trace.steps):
        if isinstance(step, AddLeaf):
            if not 0 <= step.at < count:
                raise TraceError(f"step {idx}: leaf parent {step.at} does not exist")
            new = [count]
            deg.append(0)
            count += 1
            add_edge(step.at, new[0], idx)
            yield step, new, [(step.at, new[0])]
        elif isinstance(step, AddPath):
            if not (0 <= step.u < count and 0 <= step.v < count):
                raise TraceError(f"step {idx}: path endpoint does not exist")
            if step.u == step.v:
                raise TraceError(f"step {idx}: path endpoints coincide")
            if step.length < 1:
                raise TraceError(f"step {idx}: path length must be positive")
            if check and step.length < trace.l:
                raise TraceError(f"step {idx}: path length {step.length} < {trace.l}")
            new = list(range(count, count + step.length - 1))
            deg.extend([0] * len(new))
            count += len(new)
            chain = [step.u] + new + [step.v]
            added = list(zip(chain, chain[1:]))
            for a, b in added:
                add_edge(a, b, idx)
            yield step, new, added
        else:
            raise TraceError(f"step {idx}: unknown step {step!r}")


def verify_trace(trace: BuildTrace) -> Graph:
    """Replay ``trace`` and return the graph, raising on any violation."""
    if trace.d < 0 or trace.l < 1:
        raise TraceError("trace needs d >= 0 and l >= 1")
    edges = []
    count = 1
    for _, new, added in replay(trace):
        count += len(new)
        edges.extend(added)
    return Graph.from_edges(count, edges)


def trace_graph(trace: BuildTrace) -> Graph:
    """Graph described by ``trace`` without enforcing the class conditions."""
    edges = []
    count = 1
    for _, new, added in replay(trace, check=False):
        count += len(new)
        edges.extend(added)
    return Graph.from_edges(count, edges)


def path_trace(n: int, d: int = 2, l: int = 1) -> BuildTrace:
    """The path 0-1-...-(n-1) as a sequence of leaf steps."""
    return BuildTrace(d, l, tuple(AddLeaf(i) for i in range(n - 1)))


def cycle_trace(n: int, d: int = 2, l: int = 1) -> BuildTrace:
    """A cycle on ``n >= 3`` vertices: one leaf, then a path of length n-1."""
    if n < 3:
        raise ValueError("a cycle needs at least 3 vertices")
    return BuildTrace(d, l, (AddLeaf(0), AddPath(0, 1, n - 1)))


def random_A_graph(n: int, d: int, l: int, seed: int, path_prob: float = 0.35,
                   max_extra: int | None = None) -> tuple[Graph, BuildTrace]:
    """Sample a trace with exactly ``n`` vertices, max degree ``d`` and paths of length >= ``l``."""
    if n < 1:
        raise ValueError("n must be positive")
    if d < 1 and n > 1:
        raise ValueError("d = 0 admits only the single vertex")
    if d == 1 and n > 2:
        raise ValueError("d = 1 admits at most two vertices")
    if l < 1:
        raise ValueError("l must be at least 1")
    rng = random.Random(seed)
    extra = l if max_extra is None else max_extra
    steps = []
    deg = [0]
    adj = [set()]
    while len(deg) < n:
        remaining = n - len(deg)
        free = [v for v in range(len(deg)) if deg[v] < d]
        if not free:
            raise ValueError("degree cap leaves no room to grow")
        step = None
        if len(free) >= 2 and remaining >= l - 1 and rng.random() < path_prob:
            length = rng.randint(l, min(remaining + 1, l + extra))
            u, v = rng.sample(free, 2)
            # keep a vertex with spare degree unless this step finishes the graph
            spare = len(free) - (deg[u] + 1 == d) - (deg[v] + 1 == d) + (length - 1) * (d > 2)
            if (length > 1 or v not in adj[u]) and (spare > 0 or length - 1 == remaining):
                step = AddPath(u, v, length)
        if step is None:
            step = AddLeaf(rng.choice(free))
        if isinstance(step, AddLeaf):
            chain = [step.at, len(deg)]
            new = 1
        else:
            new = step.length - 1
            chain = [step.u] + list(range(len(deg), len(deg) + new)) + [step.v]
        deg.extend([0] * new)
        adj.extend(set() for _ in range(new))
        for a, b in zip(chain, chain[1:]):
            deg[a] += 1
            deg[b] += 1
            adj[a].add(b)
            adj[b].add(a)
        steps.append(step)
    trace = BuildTrace(d, l, tuple(steps))
    return verify_trace(trace), trace
