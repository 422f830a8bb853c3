"""Graph and hypergraph constructions: powers, clique hypergraphs, blowups,
subdivisions and tight paths."""

from __future__ import annotations

from itertools import combinations, permutations

from .graph import Graph, Hypergraph


def graph_power(g: Graph, t: int) -> Graph:
    """Join every pair of distinct vertices at distance at most ``t``."""
    if t < 1:
        raise ValueError("power must be at least 1")
    edges = set()
    for u in range(g.n):
        for v, dist in g.bfs(u, limit=t).items():
            if v > u and dist <= t:
                edges.add((u, v))
    return Graph(g.n, frozenset(edges))


def iter_cliques(g: Graph, size: int):
    """Yield every clique on exactly ``size`` vertices as a sorted tuple."""
    if size < 1:
        return
    masks = g.masks

    def extend(clique, cand):
        if len(clique) == size:
            yield tuple(clique)
            return
        while cand:
            low = cand & -cand
            v = low.bit_length() - 1
            cand ^= low
            # only larger ids so each clique appears once
            clique.append(v)
            yield from extend(clique, cand & masks[v])
            clique.pop()

    yield from extend([], (1 << g.n) - 1)


def clique_hypergraph(g: Graph, r: int) -> Hypergraph:
    """The r-graph whose edges are the r-cliques of ``g``."""
    return Hypergraph(g.n, r, frozenset(iter_cliques(g, r)))


def blowup(g: Graph, b: int) -> tuple[Graph, tuple[int, ...]]:
    """Replace each vertex by a b-clique; cliques of adjacent vertices are fully joined.

    Copy 0 of vertex ``v`` keeps id ``v``; copy ``i >= 1`` gets id
    ``n + v*(b-1) + i - 1``.  The second value maps each new id to its block.
    """
    if b < 1:
        raise ValueError("blowup factor must be at least 1")
    n = g.n
    copies = [[v] + [n + v * (b - 1) + i for i in range(b - 1)] for v in range(n)]
    block = [0] * (n * b)
    for v, ids in enumerate(copies):
        for x in ids:
            block[x] = v
    edges = set()
    for v in range(n):
        edges.update(combinations(copies[v], 2))
    for u, v in g.edges:
        edges.update((x, y) for x in copies[u] for y in copies[v])
    return Graph(n * b, frozenset(edges)), tuple(block)


def subdivide(g: Graph, q: int) -> Graph:
    """Replace every edge by a path of length ``q``; interior ids are appended."""
    if q < 1:
        raise ValueError("subdivision length must be at least 1")
    edges = []
    nxt = g.n
    for u, v in g.sorted_edges():
        chain = [u] + list(range(nxt, nxt + q - 1)) + [v]
        nxt += q - 1
        edges.extend(zip(chain, chain[1:]))
    return Graph.from_edges(nxt, edges)


def tight_path(n: int, r: int) -> Hypergraph:
    if r < 1 or n < r:
        raise ValueError(f"tight path needs n >= r >= 1, got n={n}, r={r}")
    return Hypergraph(n, r, frozenset(tuple(range(i, i + r)) for i in range(n - r + 1)))


def tight_path_power(n: int, r: int, t: int) -> Hypergraph:
    """All r-subsets of every window of ``r+t-1`` consecutive vertices."""
    if t < 1:
        raise ValueError("power must be at least 1")
    if r < 1 or n < r:
        raise ValueError(f"tight path needs n >= r >= 1, got n={n}, r={r}")
    w = min(r + t - 1, n)
    edges = set()
    for i in range(n - w + 1):
        edges.update(combinations(range(i, i + w), r))
    return Hypergraph(n, r, frozenset(edges))


def hypergraph_power(h: Hypergraph, t: int) -> Hypergraph:
    """r-sets lying inside some tight path of ``h`` on at most ``r+t-1`` vertices."""
    if t < 1:
        raise ValueError("power must be at least 1")
    r = h.r
    longest = r + t - 1
    # (r-1)-set of the current tail -> vertices completing it to an edge
    completions: dict[frozenset, set[int]] = {}
    for e in h.edges:
        for v in e:
            completions.setdefault(frozenset(e) - {v}, set()).add(v)
    found = set()

    def grow(seq):
        found.update(combinations(sorted(seq), r))
        if len(seq) == longest:
            return
        tail = frozenset(seq[len(seq) - r + 1:]) if r > 1 else frozenset()
        for v in completions.get(tail, ()):
            if v not in seq:
                seq.append(v)
                grow(seq)
                seq.pop()

    for e in h.edges:
        for start in permutations(e):
            grow(list(start))
    return Hypergraph(h.n, r, frozenset(found))


def complete_graph(n: int) -> Graph:
    return Graph.from_edges(n, combinations(range(n), 2))


def complete_bipartite(a: int, b: int) -> Graph:
    """Left side ``0..a-1``, right side ``a..a+b-1``."""
    return Graph.from_edges(a + b, ((u, a + v) for u in range(a) for v in range(b)))


def path_graph(n: int) -> Graph:
    return Graph.from_edges(n, ((i, i + 1) for i in range(n - 1)))


def cycle_graph(n: int) -> Graph:
    if n < 3:
        raise ValueError("a cycle needs at least 3 vertices")
    return Graph.from_edges(n, [(i, (i + 1) % n) for i in range(n)])
