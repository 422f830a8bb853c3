"""Acceptance criteria, one PASS/FAIL line each.

Run with ``pytest -v -s tests/test_acceptance.py`` or directly with
``python3 tests/test_acceptance.py``.
"""

import math
import random
import sys
import time
from itertools import combinations
from pathlib import Path

import networkx as nx
import pytest

sys.path.insert(0, str(Path(__file__).parent))

import oracles  # noqa: E402
from instances import expanding_hosts, random_graph  # noqa: E402
from sizeramsey.arrowing import arrows, size_ramsey_search, small_graphs  # noqa: E402
from sizeramsey.embedder import close_edge, extend_leaf, single_vertex, trim  # noqa: E402
from sizeramsey.errors import NoExtension  # noqa: E402
from sizeramsey.expander import boost, is_expanding, random_expander  # noqa: E402
from sizeramsey.hypercore import (blowup, complete_graph, cycle_graph,  # noqa: E402
                                  hypergraph_power, path_graph, path_trace, random_A_graph,
                                  random_hypergraph_tree, tight_path, tight_path_power)
from sizeramsey.otrees import complete_tree, find_mono_subforest, relabel, star  # noqa: E402
from sizeramsey.reduction import (halve, parameter_table, reduce_pipeline,  # noqa: E402
                                  to_bipartite_subdivision, tree_host)
from sizeramsey.skeleton import (TreeSkeleton, check_MT, derived_hypergraph, initial_skeleton,  # noqa: E402
                                 iterate, validate)
from sizeramsey.trimming import vizing_colouring  # noqa: E402


def fails(label, bad):
    bad.append(label)


# 1 ----------------------------------------------------------------------------


def identities():
    bad = []
    for r in (2, 3, 4):
        for n in range(r, 11):
            if tight_path(n, r) != oracles.clique_hyper(oracles.power(path_graph(n), r - 1), r):
                fails(("tight", n, r), bad)
    for r in (2, 3):
        for n in range(r, 9):
            for t in (1, 2, 3):
                a = tight_path_power(n, r, t)
                b = hypergraph_power(tight_path(n, r), t)
                c = oracles.clique_hyper(oracles.power(path_graph(n), r + t - 2), r)
                if not (a == b == c and set(a.edges) == oracles.tight_paths_power(tight_path(n, r), t)):
                    fails(("power", n, r, t), bad)
    return bad, 10


# 2 ----------------------------------------------------------------------------


def host_construction():
    bad = []
    done = 0
    seed = 0
    while done < 200:
        rng = random.Random(seed)
        r, d = rng.randint(2, 4), rng.randint(1, 3)
        n = rng.randint(r, 12)
        seed += 1
        try:
            tree = random_hypergraph_tree(n, r, d, seed, connected=rng.random() < 0.7)
        except ValueError:
            continue
        done += 1
        T = tree.hypergraph
        res = tree_host(tree.order, n=n, d=d)
        S = res.S
        comps = nx.number_connected_components(
            nx.Graph([(e[0], v) for e in tree.order for v in e[1:]] + [(v, v) for v in range(n)]))
        dist = oracles.distances(S)
        ok = (S.n == n + comps and nx.is_tree(oracles.to_nx(S)) and S.max_degree <= d * r
              and all(dist[u][w] <= d + 1 for e in T.edges for u, w in combinations(e, 2))
              and oracles.is_embedding(T, oracles.clique_hyper(oracles.power(S, d + 1), r), range(n))
              and oracles.is_embedding(hypergraph_power(T, 2),
                                       oracles.clique_hyper(oracles.power(S, 2 * (d + 1)), r), range(n)))
        if not ok:
            fails((seed, n, r, d, comps, S.max_degree), bad)
    return bad, 120


# 3 ----------------------------------------------------------------------------


def contraction():
    bad = []
    for seed in range(100):
        rng = random.Random(seed)
        d, l = rng.choice((2, 3)), rng.choice((8, 12))
        H, tr = random_A_graph(rng.randint(1, 40), d, l, seed)
        dh = oracles.distances(H)

        res = halve(H, tr)
        phi, df = res.phi.image, oracles.distances(res.F)
        ok = all(df[phi[x]].get(phi[y], math.inf) <= math.ceil(k / 2) for x in dh for y, k in dh[x].items())
        ok &= max(phi.count(u) for u in range(res.F.n)) <= 4 * d * d

        sub = to_bipartite_subdivision(H, tr)
        psi, Fm = sub.phi.image, sub.F_minus
        ok &= nx.is_bipartite(oracles.to_nx(sub.F))
        ok &= all(psi[x] == psi[y] or Fm.has_edge(psi[x], psi[y]) for x, y in H.edges)
        ok &= all(psi.count(u) <= 4 * d for u in range(Fm.n))
        # F_minus really is the 1-subdivision of F
        sd = nx.Graph()
        sd.add_nodes_from(range(sub.F.n))
        for i, (u, v) in enumerate(sub.F.sorted_edges()):
            sd.add_edges_from([(u, ("s", i)), (("s", i), v)])
        ok &= nx.is_isomorphic(sd, oracles.to_nx(Fm))
        if not ok:
            fails((seed, d, l, H.n), bad)
    return bad, 120


# 4 ----------------------------------------------------------------------------


def pipeline():
    bad = []
    tr = path_trace(60, d=2, l=56)
    H = path_graph(60)
    res = reduce_pipeline(H, tr, 2, 2, 56)
    big, block = blowup(res.F_minus, res.T_actual)
    emb = res.embedding
    if not (len(set(emb)) == 60 and all(block[emb[x]] == res.rho(x) for x in range(60))
            and oracles.is_embedding(oracles.power(H, 2), big, emb)):
        fails("embedding", bad)
    if not res.T_actual <= 4 ** 48:
        fails(("T_actual", res.T_actual), bad)
    p = parameter_table(2, 2, 56)
    if (p.s, p.ells[1], p.ds[1], p.bs[0]) != (1, 26, 32, 16):
        fails(("params", p.s, p.ells, p.ds, p.bs), bad)
    return bad, 30


# 5 ----------------------------------------------------------------------------


def arrowing():
    bad = []
    K3 = complete_graph(3)
    if not arrows(complete_graph(6), [K3, K3]).verdict:
        fails("K6", bad)
    v = arrows(complete_graph(5), [K3, K3])
    if v.verdict or sorted(v.witness.edges) != complete_graph(5).sorted_edges():
        fails("K5", bad)
    else:
        for c in (0, 1):
            if oracles.contains_graph(K3, oracles.from_nx(nx.Graph(v.witness.class_of(c)), 5)):
                fails(("K5 witness", c), bad)
    res = size_ramsey_search(path_graph(3), 2, small_graphs(5))
    if res.edges != 3 or not oracles.arrows(res.host, [path_graph(3)] * 2):
        fails(("P3", res.edges), bad)
    return bad, 60


# 6 ----------------------------------------------------------------------------


def micro_tree_ramsey():
    bad = []
    forest = [star(0, range(1, 7))]
    pairs = list(combinations(range(1, 7), 2))
    for mask in range(1 << 15):
        col = {p: mask >> i & 1 for i, p in enumerate(pairs)}
        res = find_mono_subforest(forest, ["(()())"], col, 3)
        if res is None:
            fails(mask, bad)
            continue
        (sub,), c = res
        if len(sub.leaves) != 3 or {col[p] for p in combinations(sub.leaves, 2)} != {c}:
            fails(mask, bad)
    pentagon = {(a, b): int((b - a) % 5 in (1, 4)) for a, b in combinations(range(1, 6), 2)}
    if any(pentagon[a, b] == pentagon[a, c] == pentagon[b, c] for a, b, c in combinations(range(1, 6), 3)):
        fails("pentagon not triangle-free", bad)
    if find_mono_subforest([star(0, range(1, 6))], ["(()())"], pentagon, 3) is not None:
        fails("D=5", bad)
    return bad, 60


# 7 ----------------------------------------------------------------------------


def goodness():
    bad = []
    for g, m, d in expanding_hosts(50, seed=11):
        # host is (m, d+2)-expanding, so it is (2k-2, d+2)-expanding for k = m//2 + 1
        k = m // 2 + 1
        if not oracles.expanding(g, 2 * k - 2, d + 2):
            fails(("host", m, d), bad)
        for x in range(g.n):
            if not oracles.good(single_vertex(g, x, k, d).H, g, (x,), k, d):
                fails(("single", x), bad)
        for seed in range(3):
            rng = random.Random(seed)
            e = single_vertex(g, rng.randrange(g.n), k, d)
            while e.H.n < k:
                free = [v for v in range(e.H.n) if e.H.degree(v) < d]
                if not free:
                    break
                try:
                    e = extend_leaf(e, rng.choice(free))
                except NoExtension:
                    fails(("no extension", e.H.n, k), bad)
                    break
            for _ in range(4):
                free = [v for v in range(e.H.n) if e.H.degree(v) < d]
                if not free:
                    break
                try:
                    e = extend_leaf(e, rng.choice(free))
                except NoExtension:
                    break
            if not oracles.good(e.H, g, e.phi, k, d):
                fails("grown", bad)
                continue
            for v in range(e.H.n):
                if e.H.degree(v) == 1:
                    t = trim(e, [u for u in range(e.H.n) if u != v], check=False)
                    if not oracles.good(t.H, g, t.phi, k, d):
                        fails(("trim", v), bad)
            for u, v in combinations(range(e.H.n), 2):
                if not e.H.has_edge(u, v) and g.has_edge(e.phi[u], e.phi[v]):
                    c = close_edge(e, u, v, check=False)
                    if not oracles.good(c.H, g, c.phi, k, d):
                        fails(("close", u, v), bad)
    return bad, 180


# 8 ----------------------------------------------------------------------------


def expanders():
    bad = []
    bound = 80 * 2.5 * math.log(2.5)
    for seed in range(20):
        g, cert = random_expander(12, 0.4, seed)
        if not (cert.verdict and g.n == 12 and g.max_degree <= bound and oracles.eps_expander(g, 0.4)):
            fails(seed, bad)
    res = boost(complete_graph(12))
    h = res.graph
    if not (h.n >= 6 and is_expanding(h, max(12 // 16, 1), 2).verdict and oracles.expanding(h, 1, 2)):
        fails("boost", bad)
    return bad, 60


# 9 ----------------------------------------------------------------------------


def skeletons():
    bad = []
    C12, k = cycle_graph(12), (6, 2)
    for seed in range(20):
        sk0 = initial_skeleton(C12, k)
        g0 = derived_hypergraph(sk0, 2)
        rng = random.Random(seed)
        col = {e: rng.randrange(2) for e in sorted(g0.edges)}
        sk1, reports = iterate(sk0, col, path_len=3, t=2, r=2, arities=[2], max_steps=1)
        if [r.case for r in reports] != ["grew"] or validate(sk1):
            fails((seed, [r.case for r in reports]), bad)
            continue
        g0_mid = derived_hypergraph(sk0, 2, power=3 * k[1])
        g1 = derived_hypergraph(sk1, 2)
        # independent recount of the middle hypergraph from root distances in G
        dist = oracles.distances(C12)
        owners = {}
        for u, t in sk0.trees.items():
            for x in t.leaves:
                owners.setdefault(x, set()).add(u)
        mid = {e for e in combinations(sorted(owners), 2)
               if any(dist[a].get(b, 99) <= 3 * k[1] for a in owners[e[0]] for b in owners[e[1]])}
        if not (set(g1.edges) <= set(g0_mid.edges) == mid and mid <= set(g0.edges)):
            fails((seed, "containment"), bad)
        if not check_MT(sk1, col, 2, 2).holds:
            fails((seed, "MT"), bad)
    # height two, arity three, connectors of size two, one colour: the only colouring breaks (MT)
    base = complete_tree(3, 2)
    trees = {}
    for u in range(4):
        f = {v: v for v in base.vertices}
        f[0], f[u] = u, 0
        trees[u] = relabel(base, f)
    sk = TreeSkeleton(complete_graph(13), 2, trees, 3, (1, 1, 1))
    h = derived_hypergraph(sk, 2)
    if validate(sk) or check_MT(sk, {e: 0 for e in h.edges}, 2, 2).holds:
        fails("height two", bad)
    return bad, 300


# 10 ---------------------------------------------------------------------------


def vizing():
    bad = []
    for seed in range(1000):
        rng = random.Random(seed)
        g = random_graph(rng.randint(1, 30), rng.random(), seed)
        col = vizing_colouring(g)
        at = {}
        ok = set(col) == set(g.edges)
        for (u, v), c in col.items():
            for x in (u, v):
                ok &= (x, c) not in at
                at[x, c] = True
        ok &= len(set(col.values())) <= g.max_degree + 1
        if not ok:
            fails(seed, bad)
    c5 = cycle_graph(5)
    if len(set(vizing_colouring(c5).values())) != 3 or oracles.edge_colourable(c5, 2):
        fails("C5", bad)
    return bad, 30


CRITERIA = [
    (1, "tight path and power identities", identities),
    (2, "tree host construction", host_construction),
    (3, "halving and bipartite subdivision", contraction),
    (4, "power pipeline on P_60", pipeline),
    (5, "arrowing ground truth", arrowing),
    (6, "micro ordered-tree Ramsey", micro_tree_ramsey),
    (7, "goodness observations", goodness),
    (8, "expander suite", expanders),
    (9, "skeleton machinery", skeletons),
    (10, "proper edge colouring", vizing),
]


def run(fn):
    start = time.perf_counter()
    bad, limit = fn()
    elapsed = time.perf_counter() - start
    ok = not bad and elapsed < limit
    return ok, elapsed, limit, bad


def line(num, name, ok, elapsed, limit, bad):
    tail = "" if not bad else f" failures={len(bad)} first={bad[0]!r}"
    return f"{'PASS' if ok else 'FAIL'} criterion {num:2d} {name}: {elapsed:.2f}s (limit {limit}s){tail}"


@pytest.mark.parametrize("num,name,fn", CRITERIA, ids=[str(c[0]) for c in CRITERIA])
def test_criterion(num, name, fn, capsys):
    ok, elapsed, limit, bad = run(fn)
    with capsys.disabled():
        print("\n" + line(num, name, ok, elapsed, limit, bad))
    assert ok, line(num, name, ok, elapsed, limit, bad)


if __name__ == "__main__":
    results = [run(fn) for _, _, fn in CRITERIA]
    for (num, name, _), res in zip(CRITERIA, results):
        print(line(num, name, *res))
    sys.exit(0 if all(r[0] for r in results) else 1)
