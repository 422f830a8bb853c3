"""Tree skeletons: families of uniform ordered trees hanging from a shrinking
vertex set of an expander, grown one level per step, together with the
hypergraphs they induce and the connector-based auxiliary colouring."""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from itertools import combinations
from typing import Mapping, Sequence

from .errors import AlignmentFailure, NotFound, ValidationError
from .hypercore.graph import Graph, Hypergraph, VertexMap
from .hypercore.operators import blowup, clique_hypergraph, graph_power, iter_cliques, subdivide
from .hypercore.search import find_subhypergraph
from .otrees import (Connector, OrderedTree, clique_colour, connector_search, leaf_candidates,
                     marked_shape, parse_shape, shape_height, singleton)
from .trimming import HangingForest, trimming_ramsey, untangle_along_graph


@lru_cache(maxsize=256)
def _power(g: Graph, k: int) -> Graph:
    return graph_power(g, k) if k >= 1 else Graph(g.n)


@dataclass(frozen=True, eq=False)
class TreeSkeleton:
    G: Graph
    j: int
    trees: Mapping[int, OrderedTree]
    arity: int
    k: tuple[int, ...]

    @property
    def U(self) -> list[int]:
        return sorted(self.trees)

    def leaves_of(self, u: int) -> tuple[int, ...]:
        return self.trees[u].leaves

    def vertices(self) -> list[int]:
        return sorted({x for u in self.trees for x in self.trees[u].leaves})


def initial_skeleton(G: Graph, k: Sequence[int], U: Sequence[int] | None = None) -> TreeSkeleton:
    U = range(G.n) if U is None else U
    return TreeSkeleton(G, 0, {u: singleton(u) for u in U}, 1, tuple(k))


def validate(sk: TreeSkeleton) -> list[str]:
    """Violated invariants (empty when the skeleton is valid).

    Checked: enough roots (``|U| * 2^j >= |G|``); every tree is rooted at its
    key, has height ``j``, uniform leaf depth and arity ``sk.arity``; a tree
    edge from depth ``q`` to ``q+1`` joins vertices at distance at most
    ``k[j-q]``.
    """
    g, j = sk.G, sk.j
    problems = []
    if len(sk.trees) * 2**j < g.n:
        problems.append(f"only {len(sk.trees)} roots at level {j}")
    if len(sk.k) <= j:
        problems.append("distance schedule too short")
        return problems
    for u, t in sk.trees.items():
        if t.root != u:
            problems.append(f"tree at {u} rooted at {t.root}")
        if not all(0 <= v < g.n for v in t.vertices):
            problems.append(f"tree at {u} leaves the host")
            continue
        if t.height != j or not t.is_uniform():
            problems.append(f"tree at {u} is not uniform of height {j}")
        if j > 0 and not t.arity_ok(sk.arity):
            problems.append(f"tree at {u} is not {sk.arity}-ary")
        for v in t.vertices:
            q = t.depth[v]
            for c in t.kids(v):
                if g.distance(v, c) > sk.k[j - q]:
                    problems.append(f"tree at {u}: edge {v}-{c} longer than {sk.k[j - q]}")
    return problems


def is_valid(sk: TreeSkeleton) -> bool:
    return not validate(sk)


def derived_hypergraph(sk: TreeSkeleton, r: int, power: int | None = None) -> Hypergraph:
    """r-sets of leaves drawn from the trees of a clique of roots.

    The roots must form a clique in the ``power``-th power of the host
    (default ``k[j]``); roots may repeat, so any r leaves from the trees of
    at most r roots forming a clique qualify.
    """
    power = sk.k[sk.j] if power is None else power
    gp = _power(sk.G, power)
    U = sk.U
    sub = gp.induced(U)
    edges = set()
    for size in range(1, r + 1):
        for cl in iter_cliques(sub, size):
            pool = sorted({x for i in cl for x in sk.trees[U[i]].leaves})
            edges.update(combinations(pool, r))
    return Hypergraph(sk.G.n, r, frozenset(edges))


def within_clique_power(h: Hypergraph, g: Graph, k: int) -> bool:
    """Every edge of ``h`` is a clique of the k-th power of ``g``."""
    return all(g.distance(a, b) <= k for e in h.edges for a, b in combinations(e, 2))


def _edge_colour(hyper: Hypergraph, colouring: Mapping):
    edges = hyper.edges

    def colour(e):
        e = tuple(sorted(e))
        return colouring.get(e) if e in edges else None
    return colour


@dataclass(frozen=True)
class MTResult:
    holds: bool
    root: int | None = None
    connector: Connector | None = None


def check_MT(sk: TreeSkeleton, colouring: Mapping, t: int, r: int,
             budget: int | None = None) -> MTResult:
    """No tree carries a connector: disjoint leaf sets X, Z of one tree with
    disjoint, ordered-isomorphic subtrees and some Y with ``X+Y`` and ``Y+Z``
    monochromatic cliques of one colour in the level hypergraph."""
    hyper = derived_hypergraph(sk, r)
    colour = _edge_colour(hyper, colouring)
    pool = sk.vertices()
    for u in sk.U:
        cands = leaf_candidates(sk.trees[u], t)
        found = connector_search(cands, cands, pool, t, colour, r, budget)
        if found:
            return MTResult(False, u, found)
    return MTResult(True)


@dataclass(frozen=True)
class AuxColouring:
    graph: Graph
    colours: dict
    connectors: dict


def auxiliary_colouring(sk: TreeSkeleton, colouring: Mapping, k_next: int, t: int, r: int,
                        budget: int | None = None) -> AuxColouring:
    """Colour each edge ``uv`` of the ``k_next``-th power on the roots by
    ``(c, S)`` when a connector with X in the tree at ``u``, Z in the tree at
    ``v``, shape S and colour c exists in the hypergraph on cliques of the
    ``3*k_next``-th power; otherwise grey (``None``)."""
    hyper = derived_hypergraph(sk, r, power=3 * k_next)
    colour = _edge_colour(hyper, colouring)
    gp = _power(sk.G, k_next)
    U = set(sk.trees)
    aux_edges = sorted((a, b) for a, b in gp.edges if a in U and b in U)
    pool = sorted({v for e in hyper.edges for v in e})
    cands = {u: leaf_candidates(sk.trees[u], t) for u in U}
    colours, connectors = {}, {}
    for a, b in aux_edges:
        found = connector_search(cands[a], cands[b], pool, t, colour, r, budget)
        if found:
            colours[(a, b)] = (found.colour, found.shape)
            connectors[(a, b)] = found
        else:
            colours[(a, b)] = None
    return AuxColouring(Graph(sk.G.n, frozenset(aux_edges)), colours, connectors)


def extensible_copy(t: OrderedTree, shape: str, size: int) -> tuple[int, ...]:
    """Leaves of a copy of ``shape`` placed with gaps: child ``i`` of a shape
    vertex goes to position ``(size+1)*i`` (1-based), and the path above the
    copy runs through position ``size+1``.  Needs arity at least ``size^2 + 2*size``."""
    s = parse_shape(shape)
    gap = size + 1
    if any(len(t.kids(v)) < size * size + 2 * size for v in t.vertices if t.kids(v)):
        raise ValueError(f"extensible copies need arity at least {size * size + 2 * size}")
    v = t.root
    for _ in range(t.height - shape_height(s)):
        kids = t.kids(v)
        if len(kids) < gap:
            raise ValueError("tree arity too small for an extensible copy")
        v = kids[gap - 1]

    def place(v, s):
        if not s:
            return [v]
        kids = t.kids(v)
        if len(kids) < gap * len(s):
            raise ValueError("tree arity too small for an extensible copy")
        out = []
        for i, cs in enumerate(s, start=1):
            out.extend(place(kids[gap * i - 1], cs))
        return out

    return tuple(place(v, s))


@dataclass(frozen=True)
class LiftResult:
    colour: object
    source: Hypergraph
    image: VertexMap
    multiplicity: int
    bound: int


def _realign(t: OrderedTree, old_marked, old_rest, new_marked, forbidden):
    """Leaves ``Y'`` of ``t`` with ``new_marked + Y'`` marked-shape-equal to ``old_marked + old_rest``."""
    if not old_rest:
        return ()
    target = marked_shape(t, list(old_marked) + list(old_rest), old_marked)
    pool = [x for x in t.leaves if x not in forbidden and x not in new_marked]
    for ys in combinations(pool, len(old_rest)):
        if marked_shape(t, list(new_marked) + list(ys), new_marked) == target:
            return ys
    return None


def lift_path(sk: TreeSkeleton, colouring: Mapping, path: Sequence[int],
              connectors: Sequence[Connector], t: int, r: int, k_next: int,
              max_degree_Q: int | None = None) -> LiftResult:
    """Turn a path of roots whose auxiliary edges share a colour ``(c, S)``
    into a colour-c homomorphic copy of the r-cliques of the subdivided path
    blown up by ``t``.

    ``connectors[i]`` joins ``path[i]`` (its X side) to ``path[i+1]`` (Z side).
    Each X and Z is moved onto the extensible copy of S in its tree and the
    matching part of Y is moved along; every image edge is re-verified.
    """
    n = len(path)
    if len(connectors) != n - 1:
        raise ValueError("need one connector per path edge")
    shapes = {cn.shape for cn in connectors}
    colours = {cn.colour for cn in connectors}
    if len(shapes) != 1 or len(colours) != 1:
        raise ValueError("connectors must share colour and shape")
    shape, c = shapes.pop(), colours.pop()
    hyper = derived_hypergraph(sk, r, power=3 * k_next)
    colour = _edge_colour(hyper, colouring)
    copies = [extensible_copy(sk.trees[u], shape, t) for u in path]
    blobs_mid = []
    for i, cn in enumerate(connectors):
        ta, tb = sk.trees[path[i]], sk.trees[path[i + 1]]
        la, lb = set(ta.leaves), set(tb.leaves)
        ya = [y for y in cn.Y if y in la]
        yb = [y for y in cn.Y if y in lb and y not in la]
        rest = [y for y in cn.Y if y not in la and y not in lb]
        fixed = set(copies[i]) | set(copies[i + 1]) | set(rest)
        new_a = _realign(ta, cn.X, ya, copies[i], fixed)
        if new_a is None:
            raise AlignmentFailure(f"edge {i}: no realignment on the X side", i)
        new_b = _realign(tb, cn.Z, yb, copies[i + 1], fixed | set(new_a))
        if new_b is None:
            raise AlignmentFailure(f"edge {i}: no realignment on the Z side", i)
        Y = tuple(rest) + tuple(new_a) + tuple(new_b)
        for side in (copies[i] + Y, Y + copies[i + 1]):
            if len(set(side)) != 2 * t or clique_colour(colour, side, r) != c:
                raise AlignmentFailure(f"edge {i}: realigned connector is not a colour-{c} clique", i)
        blobs_mid.append(Y)
    # the subdivided path blown up by t, and its r-cliques
    pn = Graph.from_edges(n, [(i, i + 1) for i in range(n - 1)])
    sub = subdivide(pn, 2)
    blown, block = blowup(sub, t)
    source = clique_hypergraph(blown, r)
    members: dict[int, list[int]] = {}
    for x in range(blown.n):
        members.setdefault(block[x], []).append(x)
    img = [0] * blown.n
    for q, xs in members.items():
        target = copies[q] if q < n else blobs_mid[q - n]
        for x, y in zip(sorted(xs), target):
            img[x] = y
    for e in source.edges:
        ie = tuple(sorted(img[x] for x in e))
        if len(set(ie)) != r or colour(ie) != c:
            raise AlignmentFailure("an image edge has the wrong colour or collapses")
    vm = VertexMap(tuple(img), sk.G.n)
    D = max_degree_Q if max_degree_Q is not None else min(2, n - 1)
    bound = (D + 1) * sk.G.max_degree ** (2 * sk.k[0] + 1)
    mult = vm.max_preimage()
    if mult > bound:
        raise AlignmentFailure(f"multiplicity {mult} exceeds {bound}")
    return LiftResult(c, source, vm, mult, bound)


def grey_clique_cover(aux: AuxColouring, size: int) -> list[tuple[int, ...]]:
    """Greedy maximal family of vertex-disjoint grey cliques on ``size`` roots."""
    grey = Graph(aux.graph.n, frozenset(e for e, c in aux.colours.items() if c is None))
    used: set[int] = set()
    out = []
    for cl in iter_cliques(grey, size):
        if used.isdisjoint(cl):
            out.append(cl)
            used.update(cl)
    return out


def grow(sk: TreeSkeleton, cover: Sequence[Sequence[int]], arity: int,
         colouring: Mapping | None = None, t: int | None = None, r: int | None = None) -> TreeSkeleton:
    """Next level: for each clique K of the cover and each ``u`` in K, the new
    tree at ``u`` has the roots of the trees at ``K - u`` as children (in
    ascending order).  The result is validated, and with a colouring the
    connector-freeness of the new level is checked as well."""
    trees = {}
    for K in cover:
        K = sorted(K)
        if len(K) != arity + 1:
            raise ValidationError(f"cover clique {K} does not have {arity + 1} roots")
        for u in K:
            others = [v for v in K if v != u]
            ch = {u: tuple(sk.trees[v].root for v in others)}
            seen = {u}
            for v in others:
                tv = sk.trees[v]
                if seen & tv.vertex_set:
                    raise ValidationError(f"trees of clique {K} overlap")
                seen |= tv.vertex_set
                ch.update(tv.children)
            trees[u] = OrderedTree(u, ch)
    new = TreeSkeleton(sk.G, sk.j + 1, trees, arity, sk.k)
    problems = validate(new)
    if problems:
        raise ValidationError("; ".join(problems))
    if colouring is not None:
        mt = check_MT(new, colouring, t, r)
        if not mt.holds:
            raise ValidationError(f"new level has a connector at {mt.root}")
    return new


def trim_level(sk: TreeSkeleton, colouring: Mapping, k_next: int, arity_mid: int, arity: int,
               r: int, seed: int = 0) -> TreeSkeleton:
    """Disjoint trees along the ``3*k_next``-th power, then shape-uniform
    colours on its cliques of at most r roots."""
    if sk.j == 0:
        return sk
    gp = _power(sk.G, 3 * k_next)
    U = set(sk.trees)
    g_u = Graph(sk.G.n, frozenset(e for e in gp.edges if e[0] in U and e[1] in U))
    hf = HangingForest(g_u, dict(sk.trees))
    hf = untangle_along_graph(hf, arity_mid, seed=seed)
    sub = gp.induced(sorted(U))
    order = sorted(U)
    hedges = [tuple(order[i] for i in cl) for size in range(1, r + 1)
              for cl in iter_cliques(sub, size)]
    hf = trimming_ramsey(hedges, hf, lambda e: colouring.get(tuple(sorted(e))), arity, r)
    return TreeSkeleton(sk.G, sk.j, dict(hf.trees), arity, sk.k)


@dataclass(frozen=True)
class StepReport:
    level: int
    case: str
    detail: object = None


def iterate(sk: TreeSkeleton, colouring: Mapping, path_len: int, t: int, r: int,
            arities: Sequence[int], mid_arities: Sequence[int] | None = None,
            max_steps: int = 3) -> tuple[TreeSkeleton, list[StepReport]]:
    """Run the level-by-level process until a monochromatic auxiliary path is
    lifted, the skeleton cannot grow, or ``max_steps`` levels were added.

    ``arities[j]`` is the arity of level ``j+1``; ``mid_arities[j]`` the arity
    kept after untangling level ``j`` (defaults to the current arity).
    """
    reports = []
    for _ in range(max_steps):
        j = sk.j
        if j + 1 >= len(sk.k) or j >= len(arities):
            reports.append(StepReport(j, "schedule-exhausted"))
            break
        k_next = sk.k[j + 1]
        if j > 0:
            mid = sk.arity if mid_arities is None else mid_arities[j]
            try:
                sk = trim_level(sk, colouring, k_next, mid, sk.arity, r)
            except NotFound as exc:
                reports.append(StepReport(j, "trim-failed", str(exc)))
                break
        aux = auxiliary_colouring(sk, colouring, k_next, t, r)
        lifted = _try_case_one(sk, aux, colouring, path_len, t, r, k_next)
        if lifted is not None:
            reports.append(StepReport(j, "monochromatic-path", lifted))
            break
        cover = grey_clique_cover(aux, arities[j] + 1)
        covered = sum(len(c) for c in cover)
        if 2 * covered < len(sk.trees):
            reports.append(StepReport(j, "stuck", {"covered": covered, "roots": len(sk.trees)}))
            break
        sk = grow(sk, cover, arities[j])
        reports.append(StepReport(j, "grew", {"roots": len(sk.trees)}))
    return sk, reports


def _try_case_one(sk, aux, colouring, path_len, t, r, k_next):
    classes: dict = {}
    for e, c in aux.colours.items():
        if c is not None:
            classes.setdefault(c, []).append(e)
    pattern = Graph.from_edges(path_len, [(i, i + 1) for i in range(path_len - 1)])
    for c in sorted(classes, key=repr):
        sub = Graph(sk.G.n, frozenset(classes[c]))
        phi = find_subhypergraph(pattern, sub)
        if phi is None:
            continue
        conns = []
        for a, b in zip(phi, phi[1:]):
            cn = aux.connectors[(min(a, b), max(a, b))]
            if a > b:
                cn = Connector(cn.Z, cn.Y, cn.X, cn.colour, cn.shape)
            conns.append(cn)
        try:
            return lift_path(sk, colouring, phi, conns, t, r, k_next)
        except (AlignmentFailure, ValueError):
            continue
    return None
