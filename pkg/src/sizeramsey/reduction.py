"""Explicit reductions between graph classes.

* ``tree_host`` / ``power_host``: a bounded-degree tree whose clique
  hypergraph (in a suitable graph power) contains a given hypergraph tree.
* ``halve``: map a leaves-and-long-paths graph onto another one so that
  distances roughly halve.
* ``to_bipartite_subdivision``: map such a graph into the 1-subdivision of a
  bipartite member of the class, sending adjacent vertices to equal or
  adjacent vertices.
* ``reduce_pipeline``: compose the two to place the t-th power of a traced
  graph inside a blowup of a subdivision.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from .errors import HypothesisFailure, TreeOrderError
from .hypercore.graph import Graph, Hypergraph, VertexMap
from .hypercore.hypertrees import HyperTree, tree_parents
from .hypercore.operators import hypergraph_power, subdivide
from .hypercore.traces import AddLeaf, AddPath, BuildTrace, replay, verify_trace


# hypergraph trees ------------------------------------------------------------


@dataclass(frozen=True)
class TreeHostResult:
    """``S`` has the tree's vertices ``0..n-1`` plus one extra root per
    component (``roots``).  ``attach[i]`` is the vertex the new vertices of
    edge ``i`` hang from (``None`` for the first edge of a component) and
    ``parents[i]`` the smallest earlier edge of the same component holding
    the overlap (itself for a first edge)."""

    S: Graph
    roots: tuple[int, ...]
    attach: tuple[int | None, ...]
    parents: tuple[int, ...]
    components: tuple[tuple[int, ...], ...]
    d: int
    r: int


def _tree_input(tree, n):
    if isinstance(tree, HyperTree):
        return tree.hypergraph.n, tree.hypergraph.r, [tuple(sorted(e)) for e in tree.order]
    order = [tuple(sorted(e)) for e in tree]
    if n is None:
        n = max((max(e) for e in order), default=-1) + 1
    r = len(order[0]) if order else 0
    return n, r, order


def _components(n: int, order) -> list[tuple[list[int], list[int]]]:
    """(edge indices, vertices) per component; edge components in order of
    their first edge, then isolated vertices by id."""
    parent = list(range(n))

    def find(v):
        while parent[v] != v:
            parent[v] = parent[parent[v]]
            v = parent[v]
        return v

    for e in order:
        for v in e[1:]:
            a, b = find(e[0]), find(v)
            if a != b:
                parent[b] = a
    comps: dict[int, tuple[list[int], set[int]]] = {}
    seq = []
    for i, e in enumerate(order):
        c = find(e[0])
        if c not in comps:
            comps[c] = ([], set())
            seq.append(c)
        comps[c][0].append(i)
        comps[c][1].update(e)
    out = [(comps[c][0], sorted(comps[c][1])) for c in seq]
    covered = set().union(*(vs for _, vs in out)) if out else set()
    out.extend(([], [v]) for v in range(n) if v not in covered)
    return out


def tree_host(tree, n: int | None = None, d: int | None = None) -> TreeHostResult:
    """Tree ``S`` on ``n + c`` vertices (``c`` components) with maximum degree
    at most ``d*r`` in which any two vertices of a common edge of ``tree`` are
    at distance at most ``d + 1``.

    ``tree`` is a :class:`HyperTree` or an edge sequence in tree order; ``d``
    defaults to the maximum degree of the tree.
    """
    n, r, order = _tree_input(tree, n)
    tree_parents(order, r or None)
    h = Hypergraph.from_edges(n, max(r, 1), order) if order else Hypergraph(n, max(r, 1))
    if d is None:
        d = h.max_degree
    comps = _components(n, order)
    edges: list[tuple[int, int]] = []
    roots: list[int] = []
    attach: list[int | None] = [None] * len(order)
    parents: list[int] = list(range(len(order)))
    hosts: list[list[int]] = []
    for k, (idx, vs) in enumerate(comps):
        x = n + k
        roots.append(x)
        local = []
        if not idx:
            local.append((x, vs[0]))
        else:
            sub = [order[i] for i in idx]
            par = tree_parents(sub, r)
            local.extend((x, v) for v in sub[0])
            for j in range(1, len(sub)):
                f = par[j]
                parents[idx[j]] = idx[f]
                e = set(sub[j])
                if f == 0:
                    cand = e & set(sub[0])
                else:
                    cand = (e & set(sub[f])) - set(sub[par[f]])
                if not cand:
                    raise TreeOrderError(f"edge {idx[j]}: no attach point (corrupted order)")
                p = min(cand)
                attach[idx[j]] = p
                local.extend((p, v) for v in sorted(e - set(sub[f])))
        edges.extend(local)
        hosts.append([x] + vs)
    S = Graph.from_edges(n + len(comps), _stitch(hosts, edges, n + len(comps)))
    res = TreeHostResult(S, tuple(roots), tuple(attach), tuple(parents),
                         tuple(tuple(i) for i, _ in comps), d, r)
    _check_host(res, h, order)
    return res


def _stitch(hosts: list[list[int]], edges: list[tuple[int, int]], size: int) -> list[tuple[int, int]]:
    """Join the largest leaf of each host to the smallest leaf of the next."""
    deg = [0] * size
    for a, b in edges:
        deg[a] += 1
        deg[b] += 1
    out = list(edges)
    for k in range(len(hosts) - 1):
        prev = max(v for v in hosts[k] if deg[v] == 1)
        nxt = min(v for v in hosts[k + 1] if deg[v] == 1)
        out.append((prev, nxt))
    return out


def _check_host(res: TreeHostResult, h: Hypergraph, order) -> None:
    S = res.S
    size = h.n + len(res.components)
    if S.n != size or len(S.edges) != size - 1 or len(S.components()) != 1:
        raise AssertionError("host is not a tree on n + c vertices")
    # a maximum degree of d*r is out of reach when d*r < 3 and there are
    # several components; the stitching then needs degree 2
    if (res.d * res.r >= 3 or len(res.components) == 1) and S.max_degree > res.d * res.r:
        raise AssertionError(f"host degree {S.max_degree} exceeds {res.d * res.r}")
    for e in order:
        for i, u in enumerate(e):
            dist = S.distances[u]
            for w in e[i + 1:]:
                if dist.get(w, math.inf) > res.d + 1:
                    raise AssertionError(f"{u} and {w} of edge {e} are too far apart in the host")


def power_host(tree, t: int, n: int | None = None, d: int | None = None):
    """Host tree ``S`` with every edge of the ``t``-th power of ``tree``
    inside a clique of ``S^{t(d+1)}``.

    Returns ``(TreeHostResult, witness)`` where the witness is the identity
    embedding of the tree's vertices into ``S``.
    """
    if t < 1:
        raise ValueError("t must be at least 1")
    n, r, order = _tree_input(tree, n)
    res = tree_host(order, n=n, d=d)
    h = Hypergraph.from_edges(n, r, order)
    reach = t * (res.d + 1)
    for e in hypergraph_power(h, t).edges:
        for i, u in enumerate(e):
            dist = res.S.distances[u]
            for w in e[i + 1:]:
                if dist.get(w, math.inf) > reach:
                    raise AssertionError(f"power edge {e} is not a clique in S^{reach}")
    return res, VertexMap(tuple(range(n)), res.S.n)


# distance halving -------------------------------------------------------------


class _Builder:
    """Graph grown by leaf and path steps, recorded as a trace."""

    def __init__(self):
        self.n = 1
        self.adj: list[set[int]] = [set()]
        self.steps: list = []

    def leaf(self, at: int) -> int:
        v = self.n
        self.n += 1
        self.adj.append({at})
        self.adj[at].add(v)
        self.steps.append(AddLeaf(at))
        return v

    def path(self, a: int, b: int, length: int) -> list[int]:
        """Chain ``a, new..., b``; a length-1 path between adjacent vertices is a no-op."""
        if length == 1 and b in self.adj[a]:
            return [a, b]
        new = list(range(self.n, self.n + length - 1))
        self.n += len(new)
        self.adj.extend(set() for _ in new)
        chain = [a] + new + [b]
        for x, y in zip(chain, chain[1:]):
            self.adj[x].add(y)
            self.adj[y].add(x)
        self.steps.append(AddPath(a, b, length))
        return chain

    def trace(self, d: int, l: int) -> BuildTrace:
        return BuildTrace(d, l, tuple(self.steps))


@dataclass(frozen=True)
class HalveResult:
    F: Graph
    trace: BuildTrace
    phi: VertexMap


def halve(H: Graph, trace: BuildTrace, d: int | None = None, l: int | None = None,
          check: bool = True) -> HalveResult:
    """Map the traced graph ``H`` onto a graph ``F`` grown from a trace with
    maximum degree ``4d^3`` and paths of length at least ``(l-4)//2`` such
    that distances at most halve (rounded up) and every vertex of ``F`` has
    at most ``4d^2`` preimages.

    Leaves collapse onto an image when their attachment star is not yet a
    single point.  A path first walks off both ends (at most two steps each)
    until each end's star has a single image, then is folded two-to-one onto
    a new path of about half the length.  A path whose two ends share an
    image folds onto a pendant chain instead.
    """
    d = trace.d if d is None else d
    l = trace.l if l is None else l
    if l < 6:
        raise HypothesisFailure(f"halving needs paths of length at least 6, got {l}")
    verify_trace(trace)
    n = trace.n
    adj: list[set[int]] = [set() for _ in range(n)]
    rank = [0] * n
    clock = 1
    phi = [-1] * n
    phi[0] = 0
    F = _Builder()

    def star_image(x):
        return {phi[x]} | {phi[y] for y in adj[x]}

    def add_leaf(x, y):
        nonlocal clock
        s = {x} | adj[x]
        img = star_image(x)
        if len(img) == 1:
            phi[y] = F.leaf(phi[x])
        else:
            z = max(s, key=lambda v: rank[v])
            phi[y] = phi[z]
        adj[x].add(y)
        adj[y].add(x)
        rank[y] = clock
        clock += 1

    for step, new, _ in replay(trace):
        if isinstance(step, AddLeaf):
            add_leaf(step.at, new[0])
            continue
        chain = [step.u] + new + [step.v]
        i, j = 0, len(chain) - 1
        while len(star_image(chain[i])) != 1:
            add_leaf(chain[i], chain[i + 1])
            i += 1
        while len(star_image(chain[j])) != 1:
            add_leaf(chain[j], chain[j - 1])
            j -= 1
        if i > 2 or len(chain) - 1 - j > 2:
            raise AssertionError("end normalisation took more than two steps")
        inner = chain[i + 1:j]
        hh = j - i
        a, b = phi[chain[i]], phi[chain[j]]
        if a == b:
            # both ends share an image: fold the path onto a pendant chain
            depth = math.ceil((hh // 2) / 2)
            ws = [a]
            for _ in range(depth):
                ws.append(F.leaf(ws[-1]))
            for k, v in enumerate(inner, start=1):
                phi[v] = ws[math.ceil(min(k, hh - k) / 2)]
        else:
            h2 = (hh + 1) // 2
            us = F.path(a, b, h2)
            for k, v in enumerate(inner, start=1):
                phi[v] = us[(k + 1) // 2]
            if hh % 2 == 0 and inner:
                phi[inner[-1]] = us[h2 - 1]
        for x, y in zip(chain[i:j], chain[i + 1:j + 1]):
            adj[x].add(y)
            adj[y].add(x)
        for v in inner:
            rank[v] = clock
            clock += 1
    big_d, big_l = 4 * d ** 3, max((l - 4) // 2, 1)
    ftrace = F.trace(big_d, big_l)
    Fg = verify_trace(ftrace)
    res = HalveResult(Fg, ftrace, VertexMap(tuple(phi), Fg.n))
    if check:
        check_halve(H, res, d)
    return res


def check_halve(H: Graph, res: HalveResult, d: int) -> None:
    """Star images, preimage sizes and distance contraction, exhaustively."""
    F, phi = res.F, res.phi
    for x in range(H.n):
        img = {phi(x)} | {phi(y) for y in H.adj[x]}
        if len(img) > 2 or (len(img) == 2 and not F.has_edge(*img)):
            raise AssertionError(f"star at {x} maps to {sorted(img)}")
    if phi.max_preimage() > 4 * d * d:
        raise AssertionError(f"preimage {phi.max_preimage()} exceeds {4 * d * d}")
    for x in range(H.n):
        dh = H.distances[x]
        df = F.distances[phi(x)]
        for y, dist in dh.items():
            if df.get(phi(y), math.inf) > math.ceil(dist / 2):
                raise AssertionError(f"distance of {x},{y} does not halve")


# bipartite subdivision --------------------------------------------------------


@dataclass(frozen=True)
class SubdivisionResult:
    """``F`` is bipartite; ``phi`` maps into ``F_minus`` whose vertex ``v < F.n``
    is ``v`` itself and whose vertex ``F.n + i`` subdivides ``F.sorted_edges()[i]``."""

    F: Graph
    trace: BuildTrace
    F_minus: Graph
    phi: VertexMap


def _ends(phi, x, direction):
    """Ways to walk off one end of a path: ``(consumed, image list, end vertex, leaves)``.

    Images are ``("v", u)`` or ``("e", (a, b))``; ``leaves`` lists new
    pendant vertices as ``(parent, tag)`` with tag standing for the new id.
    """
    kind, val = phi[x]
    out = []
    if kind == "v":
        out.append((0, [], val, []))
        new = ("new", direction)
        out.append((2, [("e", (val, new)), ("v", val)], val, [(val, new)]))
        out.append((2, [("e", (val, new)), ("v", new)], new, [(val, new)]))
    else:
        # vertex ids follow creation order; the younger endpoint comes first
        for c in sorted(val, reverse=True):
            out.append((1, [("v", c)], c, []))
        for c in sorted(val, reverse=True):
            new = ("new", direction)
            out.append((3, [("v", c), ("e", (c, new)), ("v", c)], c, [(c, new)]))
            out.append((3, [("v", c), ("e", (c, new)), ("v", new)], new, [(c, new)]))
    return out


def _adjacent(F: _Builder, a, la, b, lb) -> bool:
    """Whether two (possibly not yet created) end vertices are adjacent."""
    fresh_a, fresh_b = isinstance(a, tuple), isinstance(b, tuple)
    if fresh_a and fresh_b:
        return False
    if fresh_a:
        return la[0][0] == b
    if fresh_b:
        return lb[0][0] == a
    return b in F.adj[a]


def to_bipartite_subdivision(H: Graph, trace: BuildTrace, d: int | None = None,
                             l: int | None = None, check: bool = True) -> SubdivisionResult:
    """Map the traced graph ``H`` into the 1-subdivision of a bipartite graph
    ``F`` grown with maximum degree ``4d^2`` and paths of length at least
    ``(l-6)//2``.  Adjacent vertices go to equal or adjacent vertices, every
    subdividing vertex has exactly one preimage and every original vertex
    of ``F`` at most ``4d``.

    A leaf on a vertex image becomes a new pendant edge; a leaf on an edge
    image reuses an endpoint.  A path may first walk off each end by a few
    steps (to reach a vertex image, or to switch side); among the options the
    longest new path is preferred, then the fewest steps walked off.
    """
    d = trace.d if d is None else d
    l = trace.l if l is None else l
    if l < 7:
        raise HypothesisFailure(f"the subdivision map needs paths of length at least 7, got {l}")
    verify_trace(trace)
    n = trace.n
    phi: list = [None] * n
    phi[0] = ("v", 0)
    F = _Builder()
    side = [0]

    def new_leaf(u):
        w = F.leaf(u)
        side.append(1 - side[u])
        return w

    for step, new, _ in replay(trace):
        if isinstance(step, AddLeaf):
            kind, val = phi[step.at]
            if kind == "v":
                w = new_leaf(val)
                phi[new[0]] = ("e", (val, w))
            else:
                phi[new[0]] = ("v", max(val))
            continue
        chain = [step.u] + new + [step.v]
        h = len(chain) - 1
        best = None
        for kx, imx, ax, lx in _ends(phi, step.u, 0):
            for ky, imy, ay, ly in _ends(phi, step.v, 1):
                hh = h - kx - ky
                if hh < 2 or ax == ay:
                    continue
                sa = side[ax] if not isinstance(ax, tuple) else 1 - side[lx[0][0]]
                sb = side[ay] if not isinstance(ay, tuple) else 1 - side[ly[0][0]]
                for h2 in range(hh // 2, 0, -1):
                    if h2 % 2 != (sa != sb) or not 2 * h2 - 1 <= hh - 1 <= 3 * h2 - 2:
                        continue
                    if h2 == 1 and _adjacent(F, ax, lx, ay, ly):
                        continue
                    key = (-h2, kx + ky)
                    if best is None or key < best[0]:
                        best = (key, h2, (kx, imx, ax, lx), (ky, imy, ay, ly))
                    break
        if best is None:
            # short closed walk: no even cycle fits, so hang single-edge
            # spikes off the common end image and return to it each time
            (kx, imx, ax, _), (ky, imy, ay, _) = _ends(phi, step.u, 0)[0], _ends(phi, step.v, 1)[0]
            if ax != ay:
                raise AssertionError(f"no admissible alignment for path step {step}")
            for v, img in zip(chain[1:1 + kx], imx):
                phi[v] = img
            for v, img in zip(reversed(chain[h - ky:h]), imy):
                phi[v] = img
            for pos, v in enumerate(chain[kx + 1:h - ky]):
                phi[v] = ("e", (ax, new_leaf(ax))) if pos % 2 == 0 else ("v", ax)
            continue
        _, h2, (kx, imx, ax, lx), (ky, imy, ay, ly) = best
        made = {}
        for parent, tag in lx + ly:
            made[tag] = new_leaf(parent)

        def real(img):
            kind, val = img
            if kind == "v":
                return ("v", made.get(val, val))
            a, b = val
            return ("e", (made.get(a, a), made.get(b, b)))

        for v, img in zip(chain[1:1 + kx], imx):
            phi[v] = real(img)
        for v, img in zip(reversed(chain[h - ky:h]), imy):
            phi[v] = real(img)
        a = made.get(ax, ax)
        b = made.get(ay, ay)
        us = F.path(a, b, h2)
        side.extend((side[a] + pos) % 2 for pos in range(1, len(us) - 1))
        slots = []
        extra = (h - kx - ky) - 2 * h2
        for j in range(1, h2 + 1):
            slots.append(("e", (us[j - 1], us[j])))
            if j < h2:
                slots.append(("v", us[j]))
                if extra:
                    slots.append(("v", us[j]))
                    extra -= 1
        inner = chain[kx + 1:h - ky]
        if len(slots) != len(inner):
            raise AssertionError("path alignment miscounted")
        for v, img in zip(inner, slots):
            phi[v] = img
    big_d, big_l = 4 * d * d, max((l - 6) // 2, 1)
    ftrace = F.trace(big_d, big_l)
    Fg = verify_trace(ftrace)
    Fm = subdivide(Fg, 2)
    index = {e: Fg.n + i for i, e in enumerate(Fg.sorted_edges())}
    ids = []
    for kind, val in phi:
        ids.append(val if kind == "v" else index[(min(val), max(val))])
    res = SubdivisionResult(Fg, ftrace, Fm, VertexMap(tuple(ids), Fm.n))
    if check:
        check_subdivision(H, res, d)
    return res


def check_subdivision(H: Graph, res: SubdivisionResult, d: int) -> None:
    F, Fm, phi = res.F, res.F_minus, res.phi
    if not F.is_bipartite():
        raise AssertionError("F is not bipartite")
    for x, y in H.edges:
        if phi(x) != phi(y) and not Fm.has_edge(phi(x), phi(y)):
            raise AssertionError(f"edge {x}{y} is not preserved")
    sizes = phi.preimage_sizes()
    if any(sizes[u] > 4 * d for u in range(F.n)):
        raise AssertionError(f"a vertex of F has more than {4 * d} preimages")
    if any(sizes[u] != 1 for u in range(F.n, Fm.n)):
        raise AssertionError("a subdividing vertex does not have exactly one preimage")


# the full reduction -----------------------------------------------------------


@dataclass(frozen=True)
class ReductionParams:
    d: int
    t: int
    l: int
    s: int
    ells: tuple[int, ...]
    ds: tuple[int, ...]
    bs: tuple[int, ...]
    D: int
    L: Fraction
    T: int


def halvings(t: int) -> int:
    """Smallest ``s`` with ``2**s >= t``."""
    if t < 1:
        raise ValueError("t must be at least 1")
    return (t - 1).bit_length()


def parameter_table(d: int, t: int, l: int) -> ReductionParams:
    """Exact parameter sequences of the reduction, as big integers."""
    if l < 28 * t:
        raise HypothesisFailure(f"need l >= 28t = {28 * t}, got {l}")
    s = halvings(t)
    ells, ds, bs = [l], [d], []
    for _ in range(s):
        ells.append((ells[-1] - 3) // 2)
        bs.append(4 * ds[-1] ** 2)
        ds.append(4 * ds[-1] ** 3)
    D = (2 * d) ** (8 * t * t)
    T = (2 * d) ** (12 * t * t)
    L = Fraction(l, 4 * t) - 6
    if ells[-1] < Fraction(l, 2 ** s) - 5:
        raise AssertionError("path length sequence fell below l/2^s - 5")
    mult = 4 * ds[-1]
    for b in bs:
        mult *= b
    if mult > T:
        raise AssertionError("preimage bound exceeds T")
    return ReductionParams(d, t, l, s, tuple(ells), tuple(ds), tuple(bs), D, L, T)


@dataclass(frozen=True)
class PipelineResult:
    """``rho`` maps ``H`` into ``F_minus``; ``embedding`` maps ``H`` injectively
    into the ``T_actual``-blowup of ``F_minus`` (ids as in ``blowup``)."""

    F: Graph
    trace: BuildTrace
    F_minus: Graph
    rho: VertexMap
    T_actual: int
    params: ReductionParams
    embedding: tuple[int, ...]
    stages: tuple[BuildTrace, ...]


def reduce_pipeline(H: Graph, trace: BuildTrace, d: int, t: int, l: int) -> PipelineResult:
    """Halve ``ceil(log2 t)`` times, then map into a bipartite subdivision.

    Vertices of ``H`` at distance at most ``t`` land on equal or adjacent
    vertices of ``F_minus``, so ``H^t`` embeds in its blowup by the largest
    preimage size; the embedding is built and checked edge by edge.
    """
    params = parameter_table(d, t, l)
    cur_h, cur_trace, cur_d, cur_l = H, trace, d, l
    rho = VertexMap(tuple(range(H.n)), H.n)
    stages = [trace]
    for _ in range(params.s):
        step = halve(cur_h, cur_trace, cur_d, cur_l)
        rho = rho.then(step.phi)
        cur_h, cur_trace = step.F, step.trace
        cur_d, cur_l = step.trace.d, step.trace.l
        stages.append(cur_trace)
    last = to_bipartite_subdivision(cur_h, cur_trace, cur_d, cur_l)
    rho = rho.then(last.phi)
    stages.append(last.trace)
    Fm = last.F_minus
    for x in range(H.n):
        for y, dist in H.bfs(x, t).items():
            a, b = rho(x), rho(y)
            if a != b and not Fm.has_edge(a, b):
                raise AssertionError(f"{x},{y} at distance {dist} map too far apart")
    T_actual = max(rho.max_preimage(), 1)
    if T_actual > params.T:
        raise AssertionError("multiplicity exceeds T")
    embedding = blowup_embedding(rho, T_actual)
    check_blowup_embedding(H, t, Fm, T_actual, embedding)
    return PipelineResult(last.F, last.trace, Fm, rho, T_actual, params, embedding, tuple(stages))


def blowup_embedding(rho: VertexMap, b: int) -> tuple[int, ...]:
    """Send ``x`` to the copy of ``rho(x)`` given by the rank of ``x`` among
    the vertices with the same image."""
    n = rho.target_n
    seen = [0] * n
    out = []
    for x in range(rho.source_n):
        u = rho(x)
        i = seen[u]
        seen[u] += 1
        if i >= b:
            raise ValueError("blowup too small for the map")
        out.append(u if i == 0 else n + u * (b - 1) + i - 1)
    return tuple(out)


def check_blowup_embedding(H: Graph, t: int, Fm: Graph, b: int, emb: Sequence[int]) -> None:
    n = Fm.n

    def block(z):
        return z if z < n else (z - n) // (b - 1)

    if len(set(emb)) != len(emb):
        raise AssertionError("blowup embedding is not injective")
    for x in range(H.n):
        for y in H.bfs(x, t):
            if y <= x:
                continue
            u, v = block(emb[x]), block(emb[y])
            if u != v and not Fm.has_edge(u, v):
                raise AssertionError(f"power edge {x}{y} is not mapped to a blowup edge")
