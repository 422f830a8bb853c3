import random
from itertools import combinations, product
from math import comb

import pytest
from hypothesis import given, settings, strategies as st

import oracles
from sizeramsey.otrees import (OrderedTree, complete_tree, copies_in_tree, corresponding_subtree,
                               enumerate_copies, find_connector, find_mono_subforest, is_uniform_colouring,
                               lca, ordered_iso, parse_shape, relabel, shape_code, shape_of, singleton,
                               star, uniformize)

CHERRY = "(()())"


def pentagon_colouring():
    """Red edges form the 5-cycle 1-2-3-4-5, blue the pentagram: no monochromatic triangle."""
    leaves = range(1, 6)
    return {(a, b): int((b - a) % 5 in (1, 4)) for a, b in combinations(leaves, 2)}


def mono_triangle(colour, leaves):
    return any(colour[(a, b)] == colour[(a, c)] == colour[(b, c)]
               for a, b, c in combinations(sorted(leaves), 3))


@st.composite
def uniform_trees(draw, max_arity=3, max_height=3):
    """Uniform ordered trees of random (not necessarily constant) arity."""
    h = draw(st.integers(0, max_height))
    ch, nxt, level = {}, 1, [0]
    for _ in range(h):
        new = []
        for v in level:
            k = draw(st.integers(1, max_arity))
            ch[v] = tuple(range(nxt, nxt + k))
            nxt += k
            new.extend(ch[v])
        level = new
    return OrderedTree(0, ch)


class TestTrees:
    def test_leaves_and_height(self):
        t = complete_tree(2, 2)
        assert t.leaves == (3, 4, 5, 6) and t.height == 2 and t.arity_ok(2)

    def test_singleton_leaf_is_root(self):
        assert singleton(7).leaves == (7,) and singleton(7).height == 0

    def test_restrict_needs_upward_closure(self):
        with pytest.raises(ValueError):
            complete_tree(2, 2).restrict([0, 3])

    def test_round_trip(self):
        t = complete_tree(3, 2, start=5)
        assert OrderedTree.from_dict(t.to_dict()) == t


class TestCorrespondingSubtree:
    def test_all_leaves(self):
        t = complete_tree(2, 2)
        assert corresponding_subtree(t, t.leaves) == t

    def test_single_leaf(self):
        t = complete_tree(2, 2)
        sub = corresponding_subtree(t, [4])
        assert sub.vertex_set == {4} and sub.root == 4

    def test_cherry_through_root(self):
        t = complete_tree(2, 2)
        sub = corresponding_subtree(t, [3, 5])
        assert sub.root == 0 and sub.vertex_set == {0, 1, 2, 3, 5}
        assert shape_code(sub) == "((())(()))"

    def test_empty(self):
        with pytest.raises(ValueError):
            corresponding_subtree(complete_tree(2, 1), [])

    @settings(max_examples=80, deadline=None)
    @given(uniform_trees(), st.data())
    def test_minimal_with_exact_leaves(self, t, data):
        xs = data.draw(st.lists(st.sampled_from(t.leaves), min_size=1, unique=True))
        sub = corresponding_subtree(t, xs)
        assert set(sub.leaves) == set(xs)
        assert sub.root == lca(t, xs)
        # every non-root vertex lies on a root-to-X path, and the root has 2+ children unless |X|=1
        assert len(sub.kids(sub.root)) >= 2 or len(xs) == 1
        for v in sub.vertices:
            if v != sub.root:
                assert any(x == v or v in _ancestors(t, x) for x in xs)


def _ancestors(t, x):
    out = []
    while x != t.root:
        x = t.parent[x]
        out.append(x)
    return out


class TestShapes:
    def test_symmetric_pairs(self):
        t = complete_tree(2, 2)
        assert shape_of(t, [3, 4]) == shape_of(t, [5, 6]) == CHERRY

    def test_mirror_images_differ(self):
        a = OrderedTree(0, {0: (1, 2), 2: (3,)})
        b = OrderedTree(0, {0: (1, 2), 1: (3,)})
        assert not ordered_iso(a, b)
        assert oracles.isomorphic(_as_graph(a), _as_graph(b))

    def test_parse(self):
        assert parse_shape("((())())") == (((),), ())
        with pytest.raises(ValueError):
            parse_shape("(()")

    @settings(max_examples=60, deadline=None)
    @given(uniform_trees(), st.data())
    def test_invariant_under_relabelling(self, t, data):
        perm = list(t.vertices)
        random.Random(data.draw(st.integers(0, 10**6))).shuffle(perm)
        f = dict(zip(t.vertices, perm))
        u = relabel(t, f)
        xs = data.draw(st.lists(st.sampled_from(t.leaves), min_size=1, unique=True))
        assert shape_of(t, xs) == shape_of(u, [f[x] for x in xs])

    def test_iso_is_an_equivalence(self):
        rng = random.Random(0)
        t = complete_tree(3, 2)
        subs = [corresponding_subtree(t, rng.sample(t.leaves, rng.randint(1, 4))) for _ in range(60)]
        for a in subs:
            assert ordered_iso(a, a)
            for b in subs:
                assert ordered_iso(a, b) == ordered_iso(b, a)
                if ordered_iso(a, b):
                    assert all(ordered_iso(a, c) == ordered_iso(b, c) for c in subs)


def _as_graph(t):
    from sizeramsey.hypercore import Graph
    ids = {v: i for i, v in enumerate(t.vertices)}
    return Graph.from_edges(len(ids), [(ids[v], ids[c]) for v in t.vertices for c in t.kids(v)])


class TestCopies:
    def test_single_leaf_shapes(self):
        forest = [complete_tree(2, 1, start=0), complete_tree(2, 1, start=10)]
        got = set(enumerate_copies(forest, ["()", "()"]))
        assert got == {(a, b) for a in (1, 2) for b in (11, 12)}

    def test_star(self):
        for D, r in [(5, 2), (6, 3), (4, 4)]:
            code = "(" + "()" * r + ")"
            assert len(list(copies_in_tree(star(0, range(1, D + 1)), code))) == comb(D, r)

    def test_cherry_through_root(self):
        assert len(list(copies_in_tree(complete_tree(2, 2), "((())(()))"))) == 4

    def test_mismatched_components(self):
        with pytest.raises(ValueError):
            list(enumerate_copies([complete_tree(2, 1)], ["()", "()"]))

    @settings(max_examples=40, deadline=None)
    @given(uniform_trees(max_height=2), st.integers(1, 3))
    def test_copies_are_exactly_the_leaf_sets_of_that_shape(self, t, k):
        k = min(k, len(t.leaves))
        by_shape = {}
        for xs in combinations(t.leaves, k):
            by_shape.setdefault(shape_of(t, xs), set()).add(xs)
        for code, sets in by_shape.items():
            assert set(copies_in_tree(t, code)) == sets


class TestMonoSubforest:
    def test_six_leaves_always_work(self):
        forest = [star(0, range(1, 7))]
        pairs = list(combinations(range(1, 7), 2))
        for mask in range(0, 1 << 15, 97):
            col = {p: mask >> i & 1 for i, p in enumerate(pairs)}
            res = find_mono_subforest(forest, [CHERRY], col, 3)
            assert res is not None
            (sub,), c = res
            assert len(sub.leaves) == 3
            assert {col[p] for p in combinations(sub.leaves, 2)} == {c}

    def test_pentagon_fails(self):
        col = pentagon_colouring()
        assert not mono_triangle(col, range(1, 6))
        assert find_mono_subforest([star(0, range(1, 6))], [CHERRY], col, 3) is None

    def test_one_colour(self):
        t = complete_tree(4, 2)
        res = find_mono_subforest([t], ["((())(()))"], lambda e: 0, 2)
        assert res is not None and res[0][0].arity_ok(2)

    @pytest.mark.parametrize("seed", range(25))
    def test_agrees_with_triangle_scan(self, seed):
        rng = random.Random(seed)
        D = rng.choice((5, 6))
        col = {p: rng.randrange(2) for p in combinations(range(1, D + 1), 2)}
        res = find_mono_subforest([star(0, range(1, D + 1))], [CHERRY], col, 3)
        assert (res is not None) == mono_triangle(col, range(1, D + 1))


class TestUniformize:
    def test_single_colour(self):
        trees = [complete_tree(3, 1, start=0), complete_tree(3, 1, start=10)]
        res = uniformize(trees, lambda e: 0, 2, 2)
        assert res is not None

    @pytest.mark.parametrize("seed", range(10))
    def test_one_star_is_plain_ramsey(self, seed):
        rng = random.Random(seed)
        col = {p: rng.randrange(2) for p in combinations(range(1, 7), 2)}
        res = uniformize([star(0, range(1, 7))], col, 3, 2)
        assert res is not None
        (sub,), table = res
        assert is_uniform_colouring([sub], col, 2)
        assert len(set(col[p] for p in combinations(sub.leaves, 2))) == 1

    @pytest.mark.parametrize("seed", range(10))
    def test_two_trees_output_is_uniform(self, seed):
        rng = random.Random(seed)
        trees = [complete_tree(4, 1, start=0), complete_tree(4, 1, start=10)]
        leaves = sorted(trees[0].leaves + trees[1].leaves)
        col = {e: rng.randrange(2) for e in combinations(leaves, 2)}
        res = uniformize(trees, col, 2, 2)
        if res is None:
            # certify absence: no pair of 2-subsets makes every shape class monochromatic
            for a, b in product(combinations(trees[0].leaves, 2), combinations(trees[1].leaves, 2)):
                subs = [trees[0].restrict((0,) + a), trees[1].restrict((10,) + b)]
                assert not is_uniform_colouring(subs, col, 2)
        else:
            assert is_uniform_colouring(res[0], col, 2)

    def test_overlapping_trees_rejected(self):
        with pytest.raises(ValueError):
            uniformize([star(0, [1, 2]), star(5, [2, 3])], lambda e: 0, 1, 2)


class TestConnector:
    def test_monochromatic_ternary_tree(self):
        t = complete_tree(3, 2)
        c = find_connector(t, lambda e: 0, 2, 2)
        assert c is not None
        assert not set(c.X) & set(c.Y) and not set(c.Y) & set(c.Z) and not set(c.X) & set(c.Z)
        sx, sz = corresponding_subtree(t, c.X), corresponding_subtree(t, c.Z)
        assert ordered_iso(sx, sz) and not sx.vertex_set & sz.vertex_set

    def test_too_few_leaves(self):
        assert find_connector(complete_tree(2, 2), lambda e: 0, 2, 2) is None

    @pytest.mark.parametrize("seed", range(10))
    def test_found_connectors_reverify(self, seed):
        rng = random.Random(seed)
        t = complete_tree(3, 2)
        col = {e: rng.randrange(2) for e in combinations(t.leaves, 2)}
        c = find_connector(t, col, 2, 2)
        if c is None:
            return
        for side in (c.X + c.Y, c.Y + c.Z):
            assert {col[e] for e in combinations(sorted(side), 2)} == {c.colour}
        assert shape_of(t, c.X) == shape_of(t, c.Z) == c.shape
