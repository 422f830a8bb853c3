"""Brute-force arrowing: does every s-colouring of a host's edges contain a
copy of target ``i`` in colour ``i`` for some ``i``?  Plus a scan for the
smallest host that arrows."""

from __future__ import annotations

from dataclasses import dataclass, field
from itertools import combinations, permutations
from typing import Iterable, Mapping, Sequence

from .errors import BudgetExceeded
from .hypercore.graph import Graph, Hypergraph
from .hypercore.operators import complete_bipartite
from .hypercore.search import _as_hyper, find_subhypergraph


@dataclass(frozen=True)
class Colouring:
    """``colours[i]`` is the colour of ``edges[i]``."""

    edges: tuple[tuple[int, ...], ...]
    colours: tuple[int, ...]

    def __post_init__(self):
        object.__setattr__(self, "edges", tuple(tuple(sorted(e)) for e in self.edges))
        object.__setattr__(self, "colours", tuple(self.colours))
        if len(self.edges) != len(self.colours):
            raise ValueError("one colour per edge")

    def as_dict(self) -> dict[tuple[int, ...], int]:
        return dict(zip(self.edges, self.colours))

    def class_of(self, colour: int) -> list[tuple[int, ...]]:
        return [e for e, c in zip(self.edges, self.colours) if c == colour]


@dataclass(frozen=True)
class ArrowVerdict:
    verdict: bool
    witness: Colouring | None = None
    nodes: int = 0
    certificates: tuple = field(default_factory=tuple)

    def __bool__(self) -> bool:
        return self.verdict


def _colour_map(colouring) -> dict[tuple[int, ...], int]:
    if isinstance(colouring, Colouring):
        return colouring.as_dict()
    return {tuple(sorted(e)): c for e, c in colouring.items()}


def find_mono_copy(host, colouring, pattern, colour: int) -> tuple[int, ...] | None:
    """Copy of ``pattern`` using only host edges of the given colour."""
    h, p = _as_hyper(host), _as_hyper(pattern)
    if h.r != p.r:
        raise ValueError("uniformities differ")
    col = _colour_map(colouring)
    sub = Hypergraph(h.n, h.r, frozenset(e for e in h.edges if col.get(e) == colour))
    return find_subhypergraph(p, sub)


def bad_for_all(host, colouring: Colouring | Mapping, targets: Sequence) -> bool:
    """No target ``i`` appears in colour ``i``."""
    return all(find_mono_copy(host, colouring, t, i) is None for i, t in enumerate(targets))


def arrows(host, targets: Sequence, budget: int | None = None,
           symmetry: bool = True) -> ArrowVerdict:
    """Decide whether every colouring of ``host`` with ``len(targets)``
    colours has some target ``i`` in colour ``i``.

    Edges are coloured in sorted order; a branch is cut as soon as the edge
    just coloured completes a copy of its colour's target.  When all targets
    are equal, colours are introduced in increasing order.  A failing verdict
    carries a colouring that has been re-checked against every target.
    ``budget`` caps the number of search nodes (:class:`BudgetExceeded`).
    """
    h = _as_hyper(host)
    ts = [_as_hyper(t) for t in targets]
    if not ts:
        raise ValueError("need at least one target")
    for t in ts:
        if t.r != h.r:
            raise ValueError("uniformities differ")
    s = len(ts)
    edges = h.sorted_edges()
    if any(not t.edges and t.n <= h.n for t in ts):
        return ArrowVerdict(True)
    # a target with more vertices or edges than the host can never appear
    live = [t.n <= h.n and len(t.edges) <= len(edges) for t in ts]
    same = symmetry and s > 1 and all(t == ts[0] for t in ts)
    classes: list[set] = [set() for _ in range(s)]
    colours = [-1] * len(edges)
    nodes = [0]

    def completes(i, e):
        if not live[i]:
            return False
        sub = Hypergraph(h.n, h.r, frozenset(classes[i]))
        return find_subhypergraph(ts[i], sub, anchor=e) is not None

    def rec(k, top):
        if k == len(edges):
            return True
        nodes[0] += 1
        if budget is not None and nodes[0] > budget:
            raise BudgetExceeded(f"arrowing search exceeded {budget} nodes")
        e = edges[k]
        allowed = range(min(top + 2, s)) if same else range(s)
        for c in allowed:
            classes[c].add(e)
            colours[k] = c
            if not completes(c, e) and rec(k + 1, max(top, c)):
                return True
            classes[c].discard(e)
        colours[k] = -1
        return False

    if rec(0, -1):
        witness = Colouring(tuple(edges), tuple(colours))
        if not bad_for_all(h, witness, ts):
            raise AssertionError("witness colouring contains a target copy")
        return ArrowVerdict(False, witness, nodes[0])
    return ArrowVerdict(True, None, nodes[0])


def certificate(host, targets: Sequence, colouring) -> tuple[int, tuple[int, ...]] | None:
    """First ``(i, copy)`` with target ``i`` in colour ``i``, if any."""
    for i, t in enumerate(targets):
        phi = find_mono_copy(host, colouring, t, i)
        if phi is not None:
            return i, phi
    return None


# host scans ------------------------------------------------------------------


def canonical_form(g: Graph) -> tuple:
    """Lexicographically least sorted edge list over all relabellings."""
    best = None
    for perm in permutations(range(g.n)):
        form = tuple(sorted(tuple(sorted((perm[u], perm[v]))) for u, v in g.edges))
        if best is None or form < best:
            best = form
    return (g.n, best)


def small_graphs(max_n: int, min_n: int = 1) -> list[Graph]:
    """All graphs on ``min_n..max_n`` vertices without isolated vertices, up to
    isomorphism, by edge count, then vertex count."""
    seen = set()
    out = []
    for n in range(min_n, max_n + 1):
        pairs = list(combinations(range(n), 2))
        for mask in range(1 << len(pairs)):
            es = [pairs[i] for i in range(len(pairs)) if mask >> i & 1]
            g = Graph.from_edges(n, es)
            if n > 1 and any(g.degree(v) == 0 for v in range(n)):
                continue
            key = canonical_form(g)
            if key not in seen:
                seen.add(key)
                out.append(g)
    out.sort(key=lambda g: (len(g.edges), g.n, canonical_form(g)))
    return out


@dataclass(frozen=True)
class SearchResult:
    host: Graph | Hypergraph | None
    edges: int | None
    checked: int


def size_ramsey_search(pattern, s: int, hosts: Iterable, edge_budget: int | None = None,
                       budget: int | None = None) -> SearchResult:
    """First host, in nondecreasing edge count, that arrows ``pattern`` with
    ``s`` colours.  Hosts above ``edge_budget`` edges are not examined."""
    pool = sorted(hosts, key=lambda g: len(g.edges))
    checked = 0
    for g in pool:
        if edge_budget is not None and len(g.edges) > edge_budget:
            break
        checked += 1
        if arrows(g, [pattern] * s, budget=budget):
            return SearchResult(g, len(g.edges), checked)
    return SearchResult(None, None, checked)


def verify_partition_arrow(N: int, targets: Sequence, budget: int | None = None) -> ArrowVerdict:
    """Arrowing with host ``K_{N,N}`` (left ``0..N-1``, right ``N..2N-1``)."""
    return arrows(complete_bipartite(N, N), targets, budget=budget)
