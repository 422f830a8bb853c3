"""Slow, obviously-correct reference implementations used to cross-check the
package.  Graph-theoretic ones lean on networkx; the rest are plain
enumeration over itertools."""

from __future__ import annotations

from itertools import combinations, permutations, product

import networkx as nx
from networkx.algorithms.isomorphism import GraphMatcher

from sizeramsey.hypercore import Graph, Hypergraph


def to_nx(g: Graph) -> nx.Graph:
    out = nx.Graph()
    out.add_nodes_from(range(g.n))
    out.add_edges_from(g.edges)
    return out


def from_nx(g: nx.Graph, n: int) -> Graph:
    return Graph.from_edges(n, g.edges)


def power(g: Graph, t: int) -> Graph:
    dist = dict(nx.all_pairs_shortest_path_length(to_nx(g), cutoff=t))
    return Graph.from_edges(g.n, [(u, v) for u in dist for v in dist[u] if u < v])


def cliques(g: Graph, r: int) -> set[tuple[int, ...]]:
    return {tuple(sorted(c)) for c in nx.enumerate_all_cliques(to_nx(g)) if len(c) == r}


def clique_hyper(g: Graph, r: int) -> Hypergraph:
    if r == 1:
        return Hypergraph.from_edges(g.n, 1, [(v,) for v in range(g.n)])
    return Hypergraph.from_edges(g.n, r, cliques(g, r))


def distances(g: Graph) -> dict:
    return dict(nx.all_pairs_shortest_path_length(to_nx(g)))


def contains_graph(pattern: Graph, host: Graph) -> bool:
    """Subgraph (not necessarily induced) containment via VF2."""
    if pattern.n > host.n:
        return False
    return GraphMatcher(to_nx(host), to_nx(pattern)).subgraph_is_monomorphic()


def isomorphic(a: Graph, b: Graph) -> bool:
    return nx.is_isomorphic(to_nx(a), to_nx(b))


def hyper_contains(pattern: Hypergraph, host: Hypergraph) -> bool:
    """Injective edge-preserving map by trying every injection (tiny inputs only)."""
    if pattern.n > host.n:
        return False
    for img in permutations(range(host.n), pattern.n):
        if all(tuple(sorted(img[v] for v in e)) in host.edges for e in pattern.edges):
            return True
    return False


def is_embedding(pattern, host, phi) -> bool:
    if len(set(phi)) != len(phi):
        return False
    if isinstance(pattern, Graph):
        return all(host.has_edge(phi[u], phi[v]) for u, v in pattern.edges)
    return all(tuple(sorted(phi[v] for v in e)) in host.edges for e in pattern.edges)


def tight_paths_power(h: Hypergraph, t: int) -> set[tuple[int, ...]]:
    """r-sets inside a tight path of at most r+t-1 vertices, by trying every vertex sequence."""
    r = h.r
    out = set()
    for k in range(r, r + t):
        for seq in permutations(range(h.n), k):
            if all(tuple(sorted(seq[i:i + r])) in h.edges for i in range(k - r + 1)):
                out.update(combinations(sorted(seq), r))
    return out


def eps_expander(g: Graph, eps) -> bool:
    import math
    from fractions import Fraction

    s = max(math.ceil(Fraction(eps) * g.n), 1)
    for a in combinations(range(g.n), s):
        rest = [v for v in range(g.n) if v not in a]
        for b in combinations(rest, s):
            if not any(g.has_edge(x, y) for x in a for y in b):
                return False
    return True


def expanding(g: Graph, m: int, d) -> bool:
    for size in range(1, min(m, g.n) + 1):
        for xs in combinations(range(g.n), size):
            nb = {w for x in xs for w in g.adj[x]} - set(xs)
            if len(nb) < d * size:
                return False
    return True


def good(H: Graph, G: Graph, phi, m: int, d: int) -> bool:
    """The goodness inequality written out literally for every host set."""
    pre = {x: h for h, x in enumerate(phi)}
    image = set(phi)
    for size in range(1, min(m, G.n) + 1):
        for X in combinations(range(G.n), size):
            gamma = {w for x in X for w in G.adj[x]} - image
            need = sum(d - (H.degree(pre[x]) if x in pre else 0) for x in X)
            need += len(image & set(X))
            if len(gamma) < need:
                return False
    return True


def edge_colourable(g: Graph, k: int) -> bool:
    edges = g.sorted_edges()
    for cols in product(range(k), repeat=len(edges)):
        seen = set()
        ok = True
        for (u, v), c in zip(edges, cols):
            if (u, c) in seen or (v, c) in seen:
                ok = False
                break
            seen.add((u, c))
            seen.add((v, c))
        if ok:
            return True
    return False


def arrows(host: Graph, targets) -> bool:
    """Every colouring of the host's edges has target i in colour i, by enumeration."""
    edges = host.sorted_edges()
    for cols in product(range(len(targets)), repeat=len(edges)):
        if not any(contains_graph(t, Graph.from_edges(host.n, [e for e, c in zip(edges, cols) if c == i]))
                   for i, t in enumerate(targets)):
            return False
    return True


def triangle_free_colourings(n: int) -> int:
    """Number of red/blue colourings of K_n without a monochromatic triangle (bitmask scan)."""
    pairs = list(combinations(range(n), 2))
    idx = {p: i for i, p in enumerate(pairs)}
    tris = [(1 << idx[(a, b)]) | (1 << idx[(a, c)]) | (1 << idx[(b, c)])
            for a, b, c in combinations(range(n), 3)]
    full = (1 << len(pairs)) - 1
    count = 0
    for mask in range(1 << len(pairs)):
        inv = full & ~mask
        if all(mask & t != t and inv & t != t for t in tris):
            count += 1
    return count


def all_traces(max_n: int, d: int, l: int, max_len: int | None = None):
    """Every build trace (as a step list) reaching at most ``max_n`` vertices."""
    from sizeramsey.hypercore import AddLeaf, AddPath, BuildTrace, verify_trace
    from sizeramsey.errors import TraceError

    max_len = max_len or max_n
    out = []

    def rec(steps, n):
        tr = BuildTrace(d, l, tuple(steps))
        try:
            verify_trace(tr)
        except TraceError:
            return
        out.append(tr)
        for u in range(n):
            if n + 1 <= max_n:
                rec(steps + [AddLeaf(u)], n + 1)
            for v in range(n):
                if v != u:
                    for length in range(l, max_len + 1):
                        if n + length - 1 <= max_n:
                            rec(steps + [AddPath(u, v, length)], n + length - 1)

    rec([], 1)
    return out
