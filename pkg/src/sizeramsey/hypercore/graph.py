"""Core value types: graphs, uniform hypergraphs and vertex maps.

Vertices are always the dense range ``0..n-1``.  Graph edges are stored as
sorted pairs, hypergraph edges as sorted tuples, both inside frozensets so
that the objects are hashable and compare by value.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass, field
from functools import cached_property
from typing import Iterable, Sequence


def _norm_pair(u: int, v: int) -> tuple[int, int]:
    return (u, v) if u < v else (v, u)


@dataclass(frozen=True)
class Graph:
    n: int
    edges: frozenset = field(default_factory=frozenset)

    def __post_init__(self):
        if self.n < 0:
            raise ValueError("negative vertex count")
        norm = set()
        for e in self.edges:
            u, v = e
            if u == v:
                raise ValueError(f"loop at {u}")
            if not (0 <= u < self.n and 0 <= v < self.n):
                raise ValueError(f"edge {e} outside [0, {self.n})")
            norm.add(_norm_pair(u, v))
        object.__setattr__(self, "edges", frozenset(norm))

    @classmethod
    def from_edges(cls, n: int, edges: Iterable[Sequence[int]]) -> "Graph":
        return cls(n, frozenset(tuple(e) for e in edges))

    @cached_property
    def adj(self) -> tuple[frozenset, ...]:
        nb = [set() for _ in range(self.n)]
        for u, v in self.edges:
            nb[u].add(v)
            nb[v].add(u)
        return tuple(frozenset(s) for s in nb)

    @cached_property
    def masks(self) -> tuple[int, ...]:
        """Neighbourhood of each vertex as an int bitmask."""
        out = [0] * self.n
        for u, v in self.edges:
            out[u] |= 1 << v
            out[v] |= 1 << u
        return tuple(out)

    def has_edge(self, u: int, v: int) -> bool:
        return _norm_pair(u, v) in self.edges

    def degree(self, v: int) -> int:
        return len(self.adj[v])

    @property
    def max_degree(self) -> int:
        return max((len(a) for a in self.adj), default=0)

    def sorted_edges(self) -> list[tuple[int, int]]:
        return sorted(self.edges)

    def bfs(self, src: int, limit: int | None = None) -> dict[int, int]:
        """Distances from ``src`` to every vertex within ``limit`` steps."""
        dist = {src: 0}
        queue = deque([src])
        while queue:
            u = queue.popleft()
            if limit is not None and dist[u] >= limit:
                continue
            for w in self.adj[u]:
                if w not in dist:
                    dist[w] = dist[u] + 1
                    queue.append(w)
        return dist

    @cached_property
    def distances(self) -> tuple[dict[int, int], ...]:
        return tuple(self.bfs(v) for v in range(self.n))

    def distance(self, u: int, v: int) -> float:
        return self.distances[u].get(v, float("inf"))

    def components(self) -> list[list[int]]:
        seen = [False] * self.n
        comps = []
        for s in range(self.n):
            if seen[s]:
                continue
            comp = sorted(self.bfs(s))
            for v in comp:
                seen[v] = True
            comps.append(comp)
        return comps

    def is_bipartite(self) -> bool:
        side = [-1] * self.n
        for s in range(self.n):
            if side[s] >= 0:
                continue
            side[s] = 0
            queue = deque([s])
            while queue:
                u = queue.popleft()
                for w in self.adj[u]:
                    if side[w] < 0:
                        side[w] = 1 - side[u]
                        queue.append(w)
                    elif side[w] == side[u]:
                        return False
        return True

    def induced(self, vertices: Sequence[int]) -> "Graph":
        """Induced subgraph relabelled so that ``vertices[i]`` becomes ``i``."""
        pos = {v: i for i, v in enumerate(vertices)}
        es = [(pos[u], pos[v]) for u, v in self.edges if u in pos and v in pos]
        return Graph.from_edges(len(vertices), es)

    def to_hypergraph(self) -> "Hypergraph":
        return Hypergraph(self.n, 2, self.edges)


@dataclass(frozen=True)
class Hypergraph:
    n: int
    r: int
    edges: frozenset = field(default_factory=frozenset)

    def __post_init__(self):
        if self.r < 1:
            raise ValueError("uniformity must be positive")
        norm = set()
        for e in self.edges:
            t = tuple(sorted(e))
            if len(t) != self.r or len(set(t)) != self.r:
                raise ValueError(f"edge {e} is not an {self.r}-set")
            if t[0] < 0 or t[-1] >= self.n:
                raise ValueError(f"edge {e} outside [0, {self.n})")
            norm.add(t)
        object.__setattr__(self, "edges", frozenset(norm))

    @classmethod
    def from_edges(cls, n: int, r: int, edges: Iterable[Iterable[int]]) -> "Hypergraph":
        return cls(n, r, frozenset(tuple(e) for e in edges))

    @cached_property
    def incidence(self) -> tuple[tuple[tuple[int, ...], ...], ...]:
        inc = [[] for _ in range(self.n)]
        for e in sorted(self.edges):
            for v in e:
                inc[v].append(e)
        return tuple(tuple(x) for x in inc)

    def degree(self, v: int) -> int:
        return len(self.incidence[v])

    @property
    def max_degree(self) -> int:
        return max((len(x) for x in self.incidence), default=0)

    def sorted_edges(self) -> list[tuple[int, ...]]:
        return sorted(self.edges)

    @cached_property
    def shadow_masks(self) -> tuple[int, ...]:
        """Bitmask of vertices sharing at least one edge with each vertex."""
        out = [0] * self.n
        for e in self.edges:
            m = 0
            for v in e:
                m |= 1 << v
            for v in e:
                out[v] |= m & ~(1 << v)
        return tuple(out)


@dataclass(frozen=True)
class VertexMap:
    """A map from ``[0, len(image))`` into ``[0, target_n)``."""

    image: tuple[int, ...]
    target_n: int

    def __post_init__(self):
        object.__setattr__(self, "image", tuple(self.image))
        for x in self.image:
            if not 0 <= x < self.target_n:
                raise ValueError(f"image {x} outside [0, {self.target_n})")

    def __call__(self, v: int) -> int:
        return self.image[v]

    def __len__(self) -> int:
        return len(self.image)

    def preimage_sizes(self) -> list[int]:
        counts = [0] * self.target_n
        for x in self.image:
            counts[x] += 1
        return counts

    def max_preimage(self) -> int:
        return max(self.preimage_sizes(), default=0)

    def is_injective(self) -> bool:
        return len(set(self.image)) == len(self.image)

    def then(self, other: "VertexMap") -> "VertexMap":
        """``other`` after ``self``."""
        if other.source_n != self.target_n:
            raise ValueError("maps do not compose")
        return VertexMap(tuple(other.image[x] for x in self.image), other.target_n)

    @property
    def source_n(self) -> int:
        return len(self.image)


def is_hypergraph_homomorphism(src: Hypergraph, dst: Hypergraph, phi: Sequence[int]) -> bool:
    """Every edge of ``src`` is sent onto an edge of ``dst`` (so injective on edges)."""
    if len(phi) != src.n or src.r != dst.r:
        return False
    for e in src.edges:
        img = tuple(sorted(phi[v] for v in e))
        if img not in dst.edges:
            return False
    return True


def is_graph_homomorphism(src: Graph, dst: Graph, phi: Sequence[int]) -> bool:
    if len(phi) != src.n:
        return False
    return all(phi[u] != phi[v] and dst.has_edge(phi[u], phi[v]) for u, v in src.edges)
