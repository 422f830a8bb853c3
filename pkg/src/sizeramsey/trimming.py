"""Trimming families of trees that hang from the vertices of a graph: making
trees disjoint along edges (via a proper edge colouring) and making leaf
colourings depend only on shapes."""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from typing import Mapping, Sequence

from .errors import NotFound
from .hypercore.graph import Graph
from .hypercore.operators import iter_cliques
from .otrees import OrderedTree, _colour_fn, is_uniform_colouring, star, uniformize


@dataclass(frozen=True)
class HangingForest:
    """Trees ``trees[u]`` rooted at the vertices ``u`` of ``graph``; all are
    uniform of height ``h``."""

    graph: Graph
    trees: Mapping[int, OrderedTree]
    h: int = field(default=None)

    def __post_init__(self):
        hs = {t.height for t in self.trees.values()}
        if len(hs) > 1:
            raise ValueError("trees must share one height")
        if self.h is None:
            object.__setattr__(self, "h", hs.pop() if hs else 0)
        for u, t in self.trees.items():
            if t.root != u:
                raise ValueError(f"tree at {u} is rooted at {t.root}")

    def disjoint_along_edges(self) -> bool:
        return all(not (self.trees[u].vertex_set & self.trees[v].vertex_set)
                   for u, v in self.graph.edges if u in self.trees and v in self.trees)


# edge colouring ------------------------------------------------------------


def vizing_colouring(g: Graph) -> dict[tuple[int, int], int]:
    """Proper edge colouring with at most max_degree + 1 colours (Misra-Gries fan rotation)."""
    delta = g.max_degree
    palette = range(delta + 1)
    at: list[dict[int, int]] = [dict() for _ in range(g.n)]
    col: dict[tuple[int, int], int] = {}

    def key(a, b):
        return (a, b) if a < b else (b, a)

    def setc(a, b, c):
        col[key(a, b)] = c
        at[a][c] = b
        at[b][c] = a

    def unset(a, b):
        c = col.pop(key(a, b))
        del at[a][c]
        del at[b][c]
        return c

    def free(v):
        return next(c for c in palette if c not in at[v])

    for u, v in g.sorted_edges():
        common = next((c for c in palette if c not in at[u] and c not in at[v]), None)
        if common is not None:
            setc(u, v, common)
            continue
        fan = [v]
        in_fan = {v}
        grown = True
        while grown:
            grown = False
            last = fan[-1]
            for c, w in sorted(at[u].items()):
                if w not in in_fan and c not in at[last]:
                    fan.append(w)
                    in_fan.add(w)
                    grown = True
                    break
        c = free(u)
        d = free(fan[-1])
        if c != d:
            # swap colours on the maximal d/c path starting at u
            path, x, cur = [], u, d
            while cur in at[x]:
                y = at[x][cur]
                path.append((x, y, cur))
                x, cur = y, (c if cur == d else d)
            for a, b, _ in path:
                unset(a, b)
            for a, b, cc in path:
                setc(a, b, c if cc == d else d)
        # longest fan prefix still valid, ending at a vertex where d is free
        end = None
        for i, w in enumerate(fan):
            if i > 0 and col.get(key(u, w)) in at[fan[i - 1]]:
                break
            if d not in at[w]:
                end = i
                break
        if end is None:
            raise AssertionError("no rotatable fan prefix")
        shifted = [col[key(u, fan[j + 1])] for j in range(end)]
        for j in range(1, end + 1):
            unset(u, fan[j])
        for j in range(end):
            setc(u, fan[j], shifted[j])
        setc(u, fan[end], d)
    return col


def is_proper_edge_colouring(g: Graph, col: Mapping) -> bool:
    if set(col) != set(g.edges):
        return False
    for v in range(g.n):
        cs = [col[(min(v, w), max(v, w))] for w in g.adj[v]]
        if len(cs) != len(set(cs)):
            return False
    return True


# untangling ----------------------------------------------------------------


def _prune_to(t: OrderedTree, d: int) -> OrderedTree:
    """First ``d`` children everywhere."""
    keep = {t.root}
    stack = [t.root]
    while stack:
        v = stack.pop()
        kids = t.kids(v)[:d]
        keep.update(kids)
        stack.extend(kids)
    return t.restrict(keep)


def _maximal_subtree(t: OrderedTree, allowed, d: int) -> OrderedTree | None:
    """Largest subtree using only ``allowed`` non-root vertices in which every
    internal vertex keeps at least ``d`` children, all leaves at full depth."""
    h = t.height
    ok: dict[int, bool] = {}
    for v in reversed(t.vertices):
        if t.depth[v] == h:
            ok[v] = True
        else:
            good = [c for c in t.kids(v) if ok.get(c) and c in allowed]
            ok[v] = len(good) >= d
    if not ok[t.root]:
        return None
    keep = {t.root}
    stack = [t.root]
    while stack:
        v = stack.pop()
        for c in t.kids(v):
            if c in allowed and ok.get(c):
                keep.add(c)
                stack.append(c)
    return t.restrict(keep)


def _split(t1, t2, d, label):
    a1 = {v for v in t1.vertex_set if v != t2.root and label.get(v, 1) == 1}
    a2 = {v for v in t2.vertex_set if v != t1.root and label.get(v, 2) == 2}
    s1 = _maximal_subtree(t1, a1, d)
    s2 = _maximal_subtree(t2, a2, d) if s1 is not None else None
    if s1 is None or s2 is None:
        return None
    return s1, s2


def untangle_pair(t1: OrderedTree, t2: OrderedTree, d: int, seed: int = 0, retries: int = 20,
                  exhaustive_limit: int = 16, full: bool = False):
    """Vertex-disjoint subtrees of ``t1`` and ``t2`` with the same roots and heights.

    Vertices lying in both trees are labelled 1 or 2 at random (retried),
    then exhaustively if there are at most ``exhaustive_limit`` of them.
    Returns ``d``-ary subtrees, or with ``full`` the maximal ones (every
    internal vertex keeps at least ``d`` children).  ``None`` if impossible.
    """
    if t1.root == t2.root:
        raise ValueError("roots must differ")
    shared = sorted((t1.vertex_set & t2.vertex_set) - {t1.root, t2.root})
    rng = random.Random(seed)
    attempts = [dict(zip(shared, (rng.choice((1, 2)) for _ in shared))) for _ in range(retries)]
    res = None
    for label in attempts:
        res = _split(t1, t2, d, label)
        if res:
            break
    if res is None and len(shared) <= exhaustive_limit:
        for bits in range(1 << len(shared)):
            label = {v: 1 + (bits >> i & 1) for i, v in enumerate(shared)}
            res = _split(t1, t2, d, label)
            if res:
                break
    if res is None:
        return None
    if full:
        return res
    return _prune_to(res[0], d), _prune_to(res[1], d)


def untangle_along_graph(hf: HangingForest, d: int, seed: int = 0) -> HangingForest:
    """Make the trees at the ends of every edge of ``hf.graph`` disjoint.

    Edges are processed one colour class of a proper edge colouring at a
    time; each pair keeps maximal subtrees (arity at least ``d``) so later
    classes still have room, and everything is cut to ``d``-ary at the end.
    Raises :class:`NotFound` naming the failing edge.
    """
    col = vizing_colouring(hf.graph)
    trees = dict(hf.trees)
    for c in sorted(set(col.values())):
        for (u, v) in sorted(e for e, cc in col.items() if cc == c):
            res = untangle_pair(trees[u], trees[v], d, seed=seed + u * 7919 + v, full=True)
            if res is None:
                raise NotFound(f"could not untangle the trees at {u} and {v}")
            trees[u], trees[v] = res
    out = HangingForest(hf.graph, {u: _prune_to(t, d) for u, t in trees.items()})
    assert out.disjoint_along_edges()
    return out


# Ramsey trimming -------------------------------------------------------------


def line_graph_colouring(edges: Sequence[tuple]) -> list[int]:
    """Greedy proper colouring of the line graph (edges meeting get distinct
    classes), processing edges by descending line-graph degree."""
    edges = [tuple(e) for e in edges]
    meets = [[j for j, f in enumerate(edges) if j != i and set(e) & set(f)]
             for i, e in enumerate(edges)]
    order = sorted(range(len(edges)), key=lambda i: (-len(meets[i]), edges[i]))
    cls = [-1] * len(edges)
    for i in order:
        taken = {cls[j] for j in meets[i]}
        cls[i] = next(c for c in range(len(edges) + 1) if c not in taken)
    return cls


def trimming_ramsey(edges: Sequence[tuple], hf: HangingForest, colouring, d: int, r: int,
                    arities: Sequence[int] | None = None, budget: int | None = None,
                    verify: bool = True) -> HangingForest:
    """Shrink the trees so that on every hyperedge ``e`` of ``edges`` the
    colour of an r-set of leaves of the trees at ``e`` depends only on its
    tuple of shapes.

    Hyperedges are handled one line-graph colour class at a time; class ``i``
    cuts its trees to arity ``arities[i]`` (default ``d`` throughout; the
    last entry must be ``d``).  Raises :class:`NotFound` naming the failing
    hyperedge.
    """
    edges = [tuple(e) for e in edges]
    classes = line_graph_colouring(edges)
    k = max(classes, default=-1) + 1
    if arities is None:
        arities = [d] * k
    if len(arities) < k:
        raise ValueError(f"need {k} arities, got {len(arities)}")
    colour = _colour_fn(colouring)
    trees = dict(hf.trees)
    for c in range(k):
        for e, cc in zip(edges, classes):
            if cc != c:
                continue
            res = uniformize([trees[u] for u in e], colour, arities[c], r, budget=budget)
            if res is None:
                raise NotFound(f"no uniform subtrees for hyperedge {e}")
            for u, t in zip(e, res[0]):
                trees[u] = t
    out = HangingForest(hf.graph, {u: _prune_to(t, d) for u, t in trees.items()})
    if verify:
        for e in edges:
            if not is_uniform_colouring([out.trees[u] for u in e], colour, r):
                raise AssertionError(f"hyperedge {e} is not uniform after trimming")
    return out


def uniform_blowup(g: Graph, r: int, B: int, colouring, b: int,
                   budget: int | None = None) -> dict[int, tuple[int, ...]]:
    """In the ``B``-blowup of ``g`` (ids as in ``hypercore.blowup``), choose
    ``b`` vertices per block so that the colour of an r-clique depends only
    on how many of its vertices fall in each block, in block order.

    ``colouring`` maps sorted r-tuples of blowup vertices to colours.
    """
    n = g.n
    blocks = {u: [u] + [n + u * (B - 1) + i for i in range(B - 1)] for u in range(n)}
    # roots get negative ids so they never clash with blowup vertices
    trees = {-1 - u: star(-1 - u, sorted(blocks[u])) for u in range(n)}
    cl = [c for size in range(1, r + 1) for c in iter_cliques(g, size)]
    hf = HangingForest(Graph(0), trees)
    hedges = [tuple(-1 - u for u in c) for c in cl]
    out = trimming_ramsey(hedges, hf, colouring, b, r, budget=budget)
    return {u: out.trees[-1 - u].leaves for u in range(n)}
