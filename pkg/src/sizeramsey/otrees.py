"""Ordered rooted trees, their leaf-set shapes, and the Ramsey-type searches
on them (monochromatic subforests, uniform subtrees, connectors).

The order on a tree is the left-to-right order of children.  Leaves are the
non-root vertices without children, except that a one-vertex tree has its
root as its only leaf.  The shape of a leaf set is the ordered isomorphism
type of the smallest subtree containing it, written as nested parentheses.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property
from itertools import combinations, product
from typing import Callable, Iterable, Mapping, Sequence

from .errors import BudgetExceeded


@dataclass(frozen=True, eq=False)
class OrderedTree:
    root: int
    children: Mapping[int, tuple[int, ...]]

    def kids(self, v: int) -> tuple[int, ...]:
        return self.children.get(v, ())

    @cached_property
    def vertices(self) -> tuple[int, ...]:
        """All vertices in pre-order."""
        out, stack = [], [self.root]
        while stack:
            v = stack.pop()
            out.append(v)
            stack.extend(reversed(self.kids(v)))
        return tuple(out)

    @cached_property
    def vertex_set(self) -> frozenset:
        return frozenset(self.vertices)

    @cached_property
    def parent(self) -> dict[int, int]:
        return {c: v for v in self.vertices for c in self.kids(v)}

    @cached_property
    def depth(self) -> dict[int, int]:
        dep = {self.root: 0}
        for v in self.vertices:
            for c in self.kids(v):
                dep[c] = dep[v] + 1
        return dep

    @cached_property
    def leaves(self) -> tuple[int, ...]:
        if not self.kids(self.root):
            return (self.root,)
        return tuple(v for v in self.vertices if not self.kids(v))

    @cached_property
    def leaf_rank(self) -> dict[int, int]:
        return {v: i for i, v in enumerate(self.leaves)}

    @property
    def height(self) -> int:
        return max(self.depth.values())

    def is_uniform(self) -> bool:
        """All leaves at the same depth."""
        return len({self.depth[v] for v in self.leaves}) == 1

    def arity_ok(self, d: int) -> bool:
        """Every internal vertex has exactly ``d`` children."""
        return all(len(self.kids(v)) == d for v in self.vertices if self.kids(v))

    def __eq__(self, other):
        return (isinstance(other, OrderedTree) and self.root == other.root
                and all(self.kids(v) == other.kids(v) for v in self.vertices)
                and self.vertex_set == other.vertex_set)

    def __hash__(self):
        return hash((self.root, tuple((v, self.kids(v)) for v in self.vertices)))

    def restrict(self, keep: Iterable[int]) -> "OrderedTree":
        """The subtree on ``keep`` (which must contain the root and be closed upward)."""
        keep = set(keep)
        if self.root not in keep:
            raise ValueError("subtree must contain the root")
        ch = {}
        for v in self.vertices:
            if v in keep:
                if v != self.root and self.parent[v] not in keep:
                    raise ValueError("kept set is not closed under parents")
                kids = tuple(c for c in self.kids(v) if c in keep)
                if kids:
                    ch[v] = kids
        return OrderedTree(self.root, ch)

    def to_dict(self) -> dict:
        return {"root": self.root,
                "children": {str(v): list(self.kids(v)) for v in self.vertices if self.kids(v)}}

    @classmethod
    def from_dict(cls, data: Mapping) -> "OrderedTree":
        return cls(int(data["root"]),
                   {int(k): tuple(int(x) for x in v) for k, v in data["children"].items()})


def singleton(v: int) -> OrderedTree:
    return OrderedTree(v, {})


def star(root: int, leaves: Sequence[int]) -> OrderedTree:
    return OrderedTree(root, {root: tuple(leaves)} if leaves else {})


def complete_tree(arity: int, height: int, start: int = 0) -> OrderedTree:
    """Complete ``arity``-ary tree of the given height, ids assigned breadth first."""
    ch = {}
    level = [start]
    nxt_id = start + 1
    for _ in range(height):
        new_level = []
        for v in level:
            kids = tuple(range(nxt_id, nxt_id + arity))
            nxt_id += arity
            ch[v] = kids
            new_level.extend(kids)
        level = new_level
    return OrderedTree(start, ch)


def relabel(t: OrderedTree, f: Mapping[int, int]) -> OrderedTree:
    return OrderedTree(f[t.root], {f[v]: tuple(f[c] for c in k) for v, k in t.children.items()})


# shapes ------------------------------------------------------------------


def lca(t: OrderedTree, xs: Iterable[int]) -> int:
    xs = list(xs)
    if not xs:
        raise ValueError("empty set has no common ancestor")
    paths = []
    for x in xs:
        p = [x]
        while p[-1] != t.root:
            p.append(t.parent[p[-1]])
        paths.append(p[::-1])
    common = t.root
    for level in zip(*paths):
        if len(set(level)) == 1:
            common = level[0]
        else:
            break
    return common


def corresponding_subtree(t: OrderedTree, xs: Iterable[int]) -> OrderedTree:
    """Smallest subtree containing ``xs``, rooted at their lowest common ancestor."""
    xs = set(xs)
    top = lca(t, xs)
    keep = {top}
    for x in xs:
        while x not in keep:
            keep.add(x)
            x = t.parent[x]
    ch = {}
    for v in keep:
        kids = tuple(c for c in t.kids(v) if c in keep)
        if kids:
            ch[v] = kids
    return OrderedTree(top, ch)


def shape_code(t: OrderedTree, v: int | None = None) -> str:
    v = t.root if v is None else v
    return "(" + "".join(shape_code(t, c) for c in t.kids(v)) + ")"


def shape_of(t: OrderedTree, xs: Iterable[int]) -> str:
    """Shape of a leaf set; the empty set has the empty shape ``""``."""
    xs = list(xs)
    if not xs:
        return ""
    return shape_code(corresponding_subtree(t, xs))


def ordered_iso(a: OrderedTree, b: OrderedTree) -> bool:
    return shape_code(a) == shape_code(b)


def marked_shape(t: OrderedTree, xs: Iterable[int], marked: Iterable[int]) -> str:
    """Like :func:`shape_of` but leaves in ``marked`` are written ``[]``."""
    marked = set(marked)
    sub = corresponding_subtree(t, xs)

    def enc(v):
        kids = sub.kids(v)
        if not kids:
            return "[]" if v in marked else "()"
        return "(" + "".join(enc(c) for c in kids) + ")"

    return enc(sub.root)


def parse_shape(code: str):
    """Nested tuples from a parenthesised shape; ``()`` is a leaf."""
    if code == "":
        return None
    pos = 0

    def node():
        nonlocal pos
        if code[pos] != "(":
            raise ValueError(f"bad shape {code!r}")
        pos += 1
        kids = []
        while code[pos] == "(":
            kids.append(node())
        pos += 1
        return tuple(kids)

    try:
        out = node()
    except IndexError:
        raise ValueError(f"bad shape {code!r}") from None
    if pos != len(code):
        raise ValueError(f"bad shape {code!r}")
    return out


def shape_height(s) -> int:
    return 0 if not s else 1 + max(shape_height(c) for c in s)


def shape_leaves(s) -> int:
    if s is None:
        return 0
    return 1 if not s else sum(shape_leaves(c) for c in s)


def _anchored(t: OrderedTree, v: int, s):
    """Leaf tuples of copies of ``s`` whose root sits at ``v``."""
    kids = t.kids(v)
    if not s:
        if not kids:
            yield (v,)
        return
    for chosen in combinations(kids, len(s)):
        for parts in product(*(list(_anchored(t, c, cs)) for c, cs in zip(chosen, s))):
            yield tuple(x for p in parts for x in p)


def copies_in_tree(t: OrderedTree, code: str):
    """Leaf sets of ``t`` whose shape is ``code`` (leaves in left-to-right order)."""
    s = parse_shape(code)
    if s is None:
        yield ()
        return
    level = t.height - shape_height(s)
    for v in t.vertices:
        if t.depth[v] == level:
            yield from _anchored(t, v, s)


def enumerate_copies(forest: Sequence[OrderedTree], shapes: Sequence[str]):
    """Copies of a forest shape: one leaf set per component, aligned by index.

    Yields the union of the leaves as a sorted tuple.
    """
    if len(forest) != len(shapes):
        raise ValueError("forest and shape need the same number of components")
    per = [list(copies_in_tree(t, s)) for t, s in zip(forest, shapes)]
    for parts in product(*per):
        yield tuple(sorted(x for p in parts for x in p))


# searches ----------------------------------------------------------------


def _colour_fn(colouring) -> Callable:
    if callable(colouring) and not isinstance(colouring, Mapping):
        return colouring
    return lambda key: colouring[key]


def _subtree_search(forest: Sequence[OrderedTree], d: int, on_leaf, budget: int | None):
    """Depth-first choice of a ``d``-ary subtree in every tree of ``forest``.

    ``on_leaf(leaf, chosen)`` returns an undo token or ``None`` to reject;
    the token is called on backtracking.  Returns the subtrees or ``None``.
    """
    heights = [t.height for t in forest]
    nodes = [0]
    keep: list[set[int]] = [{t.root} for t in forest]
    chosen: list[int] = []
    # pending items: (tree index, vertex)
    pending = [(i, t.root) for i, t in reversed(list(enumerate(forest)))]

    def rec():
        nodes[0] += 1
        if budget is not None and nodes[0] > budget:
            raise BudgetExceeded(f"subtree search exceeded {budget} nodes")
        if not pending:
            return True
        i, v = pending.pop()
        t = forest[i]
        if t.depth[v] == heights[i]:
            undo = on_leaf(v, chosen)
            if undo is not None:
                chosen.append(v)
                if rec():
                    return True
                chosen.pop()
                undo()
            pending.append((i, v))
            return False
        kids = t.kids(v)
        for combo in combinations(kids, d):
            for c in reversed(combo):
                pending.append((i, c))
            keep[i].update(combo)
            if rec():
                return True
            keep[i].difference_update(combo)
            del pending[len(pending) - d:]
        pending.append((i, v))
        return False

    if rec():
        return [t.restrict(k) for t, k in zip(forest, keep)]
    return None


def find_mono_subforest(forest: Sequence[OrderedTree], shapes: Sequence[str], colouring, d: int,
                        budget: int | None = None):
    """``d``-ary subforest (same roots and height) whose copies of ``shapes`` all share a colour.

    ``colouring`` maps the sorted leaf tuple of every copy to a colour.
    Returns ``(subforest, colour)`` or ``None``.
    """
    colour = _colour_fn(colouring)
    copies_by_leaf: dict[int, list[tuple]] = {}
    for cp in enumerate_copies(forest, shapes):
        for x in cp:
            copies_by_leaf.setdefault(x, []).append(cp)
    state = {"colour": None, "count": 0}
    chosen_set: set[int] = set()

    def on_leaf(x, chosen):
        fixed_here = False
        for cp in copies_by_leaf.get(x, ()):
            if all(y == x or y in chosen_set for y in cp):
                c = colour(cp)
                if state["colour"] is None:
                    state["colour"] = c
                    fixed_here = True
                elif c != state["colour"]:
                    if fixed_here:
                        state["colour"] = None
                    return None
        chosen_set.add(x)

        def undo():
            chosen_set.discard(x)
            if fixed_here:
                state["colour"] = None
        return undo

    sub = _subtree_search(forest, d, on_leaf, budget)
    if sub is None:
        return None
    return sub, state["colour"]


def uniformize(trees: Sequence[OrderedTree], colouring, d: int, r: int,
               budget: int | None = None):
    """``d``-ary subtrees (same roots and heights) on which the colour of every
    r-set of leaves depends only on its tuple of per-tree shapes.

    ``colouring`` maps sorted r-tuples of leaves to colours.  Returns
    ``(subtrees, {shape tuple: colour})`` or ``None``.
    """
    leaf_sets = [set(t.leaves) for t in trees]
    for a, b in combinations(range(len(trees)), 2):
        if leaf_sets[a] & leaf_sets[b]:
            raise ValueError("trees must have disjoint leaf sets")
    owner = {x: i for i, ls in enumerate(leaf_sets) for x in ls}
    colour = _colour_fn(colouring)
    shape_cache: dict[tuple, str] = {}

    def shape(i, xs):
        key = (i, xs)
        if key not in shape_cache:
            shape_cache[key] = shape_of(trees[i], xs)
        return shape_cache[key]

    def kind(e):
        return tuple(shape(i, tuple(x for x in e if owner[x] == i)) for i in range(len(trees)))

    table: dict[tuple, object] = {}

    def on_leaf(x, chosen):
        added = []
        for rest in combinations(chosen, r - 1):
            e = tuple(sorted(rest + (x,)))
            k = kind(e)
            c = colour(e)
            if k in table:
                if table[k] != c:
                    for kk in added:
                        del table[kk]
                    return None
            else:
                table[k] = c
                added.append(k)

        def undo():
            for kk in added:
                del table[kk]
        return undo

    sub = _subtree_search(trees, d, on_leaf, budget)
    if sub is None:
        return None
    return sub, dict(table)


def is_uniform_colouring(trees: Sequence[OrderedTree], colouring, r: int) -> bool:
    """Exhaustive check that the colour of each r-set of leaves depends only on its shape tuple."""
    colour = _colour_fn(colouring)
    owner = {x: i for i, t in enumerate(trees) for x in t.leaves}
    seen = {}
    for e in combinations(sorted(owner), r):
        k = tuple(shape_of(t, [x for x in e if owner[x] == i]) for i, t in enumerate(trees))
        c = colour(e)
        if seen.setdefault(k, c) != c:
            return False
    return True


@dataclass(frozen=True)
class Connector:
    X: tuple[int, ...]
    Y: tuple[int, ...]
    Z: tuple[int, ...]
    colour: object
    shape: str


def clique_colour(colour: Callable, vs: Sequence[int], r: int):
    """Common colour of all r-subsets of ``vs`` or ``None`` (also when some subset is uncoloured)."""
    common = None
    for e in combinations(sorted(vs), r):
        c = colour(e)
        if c is None:
            return None
        if common is None:
            common = c
        elif c != common:
            return None
    return common


def connector_search(x_candidates, z_candidates, y_pool: Sequence[int], size: int, colour,
                     r: int, budget: int | None = None):
    """First connector ``(X, Y, Z)`` from the given candidates.

    ``x_candidates``/``z_candidates`` are lists of ``(leaf tuple, shape, subtree vertices)``.
    ``colour(e)`` returns the colour of an r-tuple or ``None`` when ``e`` is
    not an edge.  X and Z must have equal shapes and disjoint subtrees; Y is
    drawn from ``y_pool`` avoiding X and Z; ``X+Y`` and ``Y+Z`` must be
    cliques of one common colour.
    """
    nodes = 0
    by_shape: dict[str, list] = {}
    for z in z_candidates:
        by_shape.setdefault(z[1], []).append(z)
    for X, shp, xverts in x_candidates:
        for Z, _, zverts in by_shape.get(shp, ()):
            if xverts & zverts:
                continue
            used = set(X) | set(Z)
            pool = [y for y in y_pool if y not in used]
            for Y in combinations(pool, size):
                nodes += 1
                if budget is not None and nodes > budget:
                    raise BudgetExceeded(f"connector search exceeded {budget} candidates")
                c1 = clique_colour(colour, X + Y, r)
                if c1 is None:
                    continue
                if clique_colour(colour, Y + Z, r) == c1:
                    return Connector(tuple(X), tuple(Y), tuple(Z), c1, shp)
    return None


def leaf_candidates(t: OrderedTree, size: int):
    out = []
    for X in combinations(t.leaves, size):
        sub = corresponding_subtree(t, X)
        out.append((X, shape_code(sub), sub.vertex_set))
    return out


def find_connector(t: OrderedTree, colouring, size: int, r: int, budget: int | None = None):
    """Connector inside one tree for a colouring of all r-sets of its leaves."""
    colour = _colour_fn(colouring)
    cands = leaf_candidates(t, size)
    return connector_search(cands, cands, t.leaves, size, colour, r, budget)
