"""Good embeddings of bounded-degree graphs into expanding hosts, grown one
leaf or one long path at a time, plus the two Ramsey steps that use them."""

from __future__ import annotations

import math
from dataclasses import dataclass, replace
from itertools import combinations
from typing import Mapping

from .errors import CapExceeded, HypothesisFailure, NoCrossEdge, NoExtension, NotFound, SizeRamseyError
from .expander import boost_bipartite, ceil_frac, has_cross_edge_property, is_expanding
from .hypercore.graph import Graph
from .hypercore.operators import iter_cliques
from .hypercore.search import find_subhypergraph
from .hypercore.traces import AddLeaf, BuildTrace, verify_trace


@dataclass(frozen=True)
class GoodEmbedding:
    H: Graph
    G: Graph
    phi: tuple[int, ...]
    m: int
    d: int

    def __post_init__(self):
        object.__setattr__(self, "phi", tuple(self.phi))
        if len(self.phi) != self.H.n:
            raise ValueError("phi must assign every vertex of H")
        if len(set(self.phi)) != len(self.phi):
            raise ValueError("phi is not injective")
        for u, v in self.H.edges:
            if not self.G.has_edge(self.phi[u], self.phi[v]):
                raise ValueError(f"edge {u}{v} of H is not mapped onto an edge of G")


class EmbeddingFailed(SizeRamseyError):
    def __init__(self, message: str, step: int | None = None):
        super().__init__(message)
        self.step = step


def goodness_violation(e: GoodEmbedding, cap: int = 5_000_000) -> tuple[int, ...] | None:
    """A host set ``X`` (``1 <= |X| <= m``) breaking the goodness inequality, or ``None``.

    For ``X`` the inequality reads
    ``|N(X) minus image| >= sum over x in X of (d - deg_H(preimage of x)) + |X inside image|``,
    where ``N(X)`` is every vertex with a neighbour in ``X`` and vertices
    outside the image count with degree 0.
    """
    g = e.G
    n = g.n
    m = min(e.m, n)
    if m <= 0:
        return None
    total = sum(math.comb(n, i) for i in range(1, m + 1))
    if total > cap:
        raise CapExceeded(f"{total} host sets exceeds goodness cap {cap}")
    img = 0
    weight = [e.d] * n
    for h, x in enumerate(e.phi):
        img |= 1 << x
        weight[x] = e.d - e.H.degree(h) + 1
    outside = ~img
    masks = g.masks
    stack = []

    def rec(start, nb, w):
        for x in range(start, n):
            nb2 = nb | masks[x]
            w2 = w + weight[x]
            stack.append(x)
            if bin(nb2 & outside).count("1") < w2:
                return True
            if len(stack) < m and rec(x + 1, nb2, w2):
                return True
            stack.pop()
        return False

    if rec(0, 0, 0):
        return tuple(stack)
    return None


def is_good(e: GoodEmbedding) -> bool:
    return goodness_violation(e) is None


def single_vertex(G: Graph, x: int, m: int, d: int) -> GoodEmbedding:
    return GoodEmbedding(Graph(1), G, (x,), m, d)


def extend_leaf(e: GoodEmbedding, attach_at: int, check_input: bool = False) -> GoodEmbedding:
    """Hang a new vertex on ``attach_at`` and map it to the first free host
    neighbour (ascending id) that keeps the embedding good."""
    if not 0 <= attach_at < e.H.n:
        raise ValueError("attach_at is not a vertex of H")
    if e.H.degree(attach_at) >= e.d:
        raise HypothesisFailure(f"vertex {attach_at} already has degree {e.d}")
    if check_input and not is_good(e):
        raise HypothesisFailure("input embedding is not good")
    new = e.H.n
    used = set(e.phi)
    H2 = Graph(new + 1, e.H.edges | {(attach_at, new)})
    for y in sorted(e.G.adj[e.phi[attach_at]]):
        if y in used:
            continue
        cand = GoodEmbedding(H2, e.G, e.phi + (y,), e.m, e.d)
        if is_good(cand):
            return cand
    raise NoExtension(f"no neighbour of {e.phi[attach_at]} keeps the embedding good")


def leaf_removal_order(H: Graph, keep) -> list[int] | None:
    """Order in which the vertices outside ``keep`` can be deleted as degree-1
    vertices, or ``None`` if that is impossible."""
    keep = set(keep)
    deg = [H.degree(v) for v in range(H.n)]
    alive = set(range(H.n))
    order = []
    progress = True
    while progress and alive - keep:
        progress = False
        for v in sorted(alive - keep):
            if deg[v] == 1:
                alive.discard(v)
                order.append(v)
                for w in H.adj[v]:
                    if w in alive:
                        deg[w] -= 1
                progress = True
                break
    return order if not alive - keep else None


def trim(e: GoodEmbedding, keep, check: bool = True) -> GoodEmbedding:
    """Restrict to ``keep``, which must be reachable by deleting leaves.

    The result is relabelled in ascending order of ``keep``.
    """
    keep = sorted(set(keep))
    if not keep:
        raise ValueError("cannot trim to the empty graph")
    if leaf_removal_order(e.H, keep) is None:
        raise ValueError("kept set is not reachable by leaf removals")
    sub = e.H.induced(keep)
    out = GoodEmbedding(sub, e.G, tuple(e.phi[v] for v in keep), e.m, e.d)
    if check and not is_good(out):
        raise AssertionError("leaf removal broke goodness")
    return out


def close_edge(e: GoodEmbedding, u: int, v: int, check: bool = True) -> GoodEmbedding:
    """Add the edge ``uv`` to H; its image must already be a host edge."""
    if u == v or e.H.has_edge(u, v):
        raise ValueError("edge already present or a loop")
    if not e.G.has_edge(e.phi[u], e.phi[v]):
        raise ValueError("images are not adjacent in the host")
    out = replace(e, H=Graph(e.H.n, e.H.edges | {(u, v)}))
    if check and not is_good(out):
        raise AssertionError("closing an edge broke goodness")
    return out


def tree_height_for(m: int) -> int:
    """Height of the binary trees grown at each end of a long path: floor(log2 m) - 2, at least 0."""
    return max(m.bit_length() - 1 - 2, 0)


def min_path_length(m: int) -> int:
    return 2 * (m - 1).bit_length()


def attach_long_path(e: GoodEmbedding, x: int, y: int, path_len: int,
                     size: int | None = None) -> tuple[GoodEmbedding, list[int]]:
    """Join ``x`` and ``y`` by a new path of length ``path_len``.

    A stalk followed by a complete binary tree is grown from each end; a host
    edge between the two leaf sets closes the path and everything else is
    trimmed away.  ``size`` sets the tree height and minimum length (it
    defaults to ``e.m``).  Returns the new embedding and the path from ``x``
    to ``y`` as H-vertex ids.
    """
    m = e.m if size is None else size
    if x == y:
        raise ValueError("endpoints must differ")
    if path_len < min_path_length(m):
        raise ValueError(f"path length {path_len} below 2*ceil(log2 {m})")
    for z in (x, y):
        if e.H.degree(z) > e.d - 1:
            raise HypothesisFailure(f"endpoint {z} has no spare degree")
    height = tree_height_for(m)
    k = path_len - 1 - 2 * height
    if k < 2:
        raise ValueError("path too short for two stalks")
    kx, ky = (k + 1) // 2, k // 2
    cur = e
    parent: dict[int, int] = {}

    def grow(root, stalk):
        nonlocal cur
        prev = root
        for _ in range(stalk):
            cur = extend_leaf(cur, prev)
            parent[cur.H.n - 1] = prev
            prev = cur.H.n - 1
        level = [prev]
        for _ in range(height):
            nxt = []
            for v in level:
                for _ in range(2):
                    cur = extend_leaf(cur, v)
                    parent[cur.H.n - 1] = v
                    nxt.append(cur.H.n - 1)
            level = nxt
        return level

    leaves_x = grow(x, kx)
    leaves_y = grow(y, ky)
    hit = next(((a, b) for a in leaves_x for b in leaves_y
                if cur.G.has_edge(cur.phi[a], cur.phi[b])), None)
    if hit is None:
        raise NoCrossEdge("no host edge between the two leaf sets")

    def up(v, root):
        out = [v]
        while v != root:
            v = parent[v]
            out.append(v)
        return out

    side_x = up(hit[0], x)[::-1]
    side_y = up(hit[1], y)
    path = side_x + side_y
    keep = set(range(e.H.n)) | set(path)
    trimmed = trim(cur, keep)
    relabel = {v: i for i, v in enumerate(sorted(keep))}
    path = [relabel[v] for v in path]
    closed = close_edge(trimmed, relabel[hit[0]], relabel[hit[1]])
    assert len(path) - 1 == path_len
    return closed, path


def embedding_hypotheses(G: Graph, m: int, d: int, parts=None, good_m: int | None = None) -> dict:
    """Evaluate the host conditions needed to embed a traced graph with long paths.

    Entries are ``True``/``False`` or ``None`` when the exhaustive check is
    beyond its cap.
    """
    out = {}
    M = 4 * m - 2 if good_m is None else good_m
    try:
        out["expanding"] = bool(is_expanding(G, M, d + 2))
    except CapExceeded:
        out["expanding"] = None
    if parts is not None:
        try:
            out["cross_edges"] = bool(has_cross_edge_property(G, parts, math.ceil(m / 8)))
        except CapExceeded:
            out["cross_edges"] = None
    return out


def embed_A_graph(G: Graph, trace: BuildTrace, m: int, d: int, good_m: int | None = None,
                  start: int = 0) -> GoodEmbedding:
    """Embed the graph of ``trace`` into ``G`` step by step.

    ``m`` bounds the size of the embedded graph and sets the tree height for
    long paths; ``good_m`` is the goodness parameter (default ``4m-2``).  Any
    failed step raises :class:`EmbeddingFailed` naming the step index.
    """
    target = verify_trace(trace)
    if target.max_degree > d:
        raise HypothesisFailure("trace exceeds the degree bound")
    M = 4 * m - 2 if good_m is None else good_m
    e = single_vertex(G, start, M, d)
    if not is_good(e):
        raise EmbeddingFailed("the single-vertex embedding is not good", step=-1)
    for idx, step in enumerate(trace.steps):
        try:
            if isinstance(step, AddLeaf):
                e = extend_leaf(e, step.at)
            else:
                count = e.H.n
                e2, path = attach_long_path(e, step.u, step.v, step.length, size=m)
                # rename path interior to the trace's ids, which run from u to v
                interior = path[1:-1]
                order = list(range(count)) + interior
                phi = tuple(e2.phi[v] for v in order)
                pos = {v: i for i, v in enumerate(order)}
                H = Graph.from_edges(e2.H.n, [(pos[a], pos[b]) for a, b in e2.H.edges])
                e = GoodEmbedding(H, G, phi, M, d)
        except (NoExtension, NoCrossEdge, HypothesisFailure, ValueError) as exc:
            raise EmbeddingFailed(f"step {idx}: {exc}", step=idx) from exc
    if e.H != target:
        raise AssertionError("embedded graph differs from the trace graph")
    return e


# Ramsey steps ---------------------------------------------------------------


@dataclass(frozen=True)
class BicliqueResult:
    colour: int
    left: tuple[int, ...]
    right: tuple[int, ...]


@dataclass(frozen=True)
class MonoCopyResult:
    colour: int
    image: tuple[int, ...]


@dataclass(frozen=True)
class GreyCliqueResult:
    clique: tuple[int, ...]


def _colour_of(colouring: Mapping, u: int, v: int):
    return colouring[(u, v) if u < v else (v, u)]


def bipartite_ramsey_step(N: int, colouring: Mapping, s: int, d: int, trace: BuildTrace,
                          eps=None, m: int | None = None, good_m: int = 2):
    """Colour rounds on ``K_{N,N}`` (left ``0..N-1``, right ``N..2N-1``).

    Colours are ``0..s``.  For ``c = s, ..., 1`` the current biclique is
    searched for a sub-biclique of relative size ``eps`` (default
    ``1/(256d)``) avoiding colour ``c``.  If none exists the colour-``c`` graph
    has the bipartite expansion property, is boosted, and the trace graph is
    embedded in colour ``c``.  Otherwise the search continues inside the
    biclique found.  Surviving all rounds yields a colour-0 biclique.
    """
    from fractions import Fraction

    eps = Fraction(1, 256 * d) if eps is None else eps
    target = verify_trace(trace)
    m = target.n if m is None else m
    left, right = list(range(N)), list(range(N, 2 * N))
    for c in range(s, 0, -1):
        a = max(1, ceil_frac(eps, len(left)))
        found = None
        for A in combinations(left, a):
            common = [w for w in right if all(_colour_of(colouring, u, w) != c for u in A)]
            if len(common) >= a:
                found = (list(A), common[:a])
                break
        if found:
            left, right = found
            continue
        verts = left + right
        pos = {v: i for i, v in enumerate(verts)}
        sub = Graph.from_edges(len(verts), [(pos[u], pos[w]) for u in left for w in right
                                            if _colour_of(colouring, u, w) == c])
        boosted = boost_bipartite(sub, (tuple(range(len(left))),
                                        tuple(range(len(left), len(verts)))), d + 2)
        if boosted.graph.n == 0:
            raise NotFound(f"colour {c}: boosting removed every vertex")
        try:
            emb = embed_A_graph(boosted.graph, trace, m, d, good_m=good_m)
        except EmbeddingFailed as exc:
            raise NotFound(f"colour {c}: embedding failed ({exc})") from exc
        image = tuple(verts[boosted.kept[x]] for x in emb.phi)
        return MonoCopyResult(c, image)
    return BicliqueResult(0, tuple(left), tuple(right))


def verify_bipartite_result(result, N: int, colouring: Mapping, trace: BuildTrace) -> bool:
    if isinstance(result, BicliqueResult):
        return (all(u < N for u in result.left) and all(N <= w < 2 * N for w in result.right)
                and all(_colour_of(colouring, u, w) == result.colour
                        for u in result.left for w in result.right))
    H = verify_trace(trace)
    img = result.image
    return (len(set(img)) == H.n
            and all((img[u] < N) != (img[v] < N)
                    and _colour_of(colouring, img[u], img[v]) == result.colour
                    for u, v in H.edges))


def expander_ramsey_step(G: Graph, k: int, colouring: Mapping, t: int, trace: BuildTrace):
    """Direct search on a colouring of the edges of the k-th power of ``G``
    (colour 0 is grey): a copy of the trace graph in some non-grey colour,
    else a grey ``K_t``, else :class:`NotFound`."""
    from .hypercore.operators import graph_power

    H = verify_trace(trace)
    Gk = graph_power(G, k)
    colours = sorted({colouring[e] for e in Gk.edges})
    for c in colours:
        if c == 0:
            continue
        sub = Graph(G.n, frozenset(e for e in Gk.edges if colouring[e] == c))
        phi = find_subhypergraph(H, sub)
        if phi is not None:
            return MonoCopyResult(c, phi)
    grey = Graph(G.n, frozenset(e for e in Gk.edges if colouring[e] == 0))
    clique = next(iter_cliques(grey, t), None)
    if clique is not None:
        return GreyCliqueResult(clique)
    raise NotFound("no monochromatic copy and no grey clique")


def verify_expander_result(result, G: Graph, k: int, colouring: Mapping, trace: BuildTrace,
                           t: int) -> bool:
    from .hypercore.operators import graph_power

    Gk = graph_power(G, k)
    if isinstance(result, GreyCliqueResult):
        cl = result.clique
        return len(set(cl)) == t and all(
            Gk.has_edge(u, v) and _colour_of(colouring, u, v) == 0 for u, v in combinations(cl, 2))
    H = verify_trace(trace)
    img = result.image
    return len(set(img)) == H.n and all(
        Gk.has_edge(img[u], img[v]) and _colour_of(colouring, img[u], img[v]) == result.colour
        for u, v in H.edges)
