"""Expansion checks, random expanders and the trimming that boosts a
bipartite expander into a graph where small sets expand by a factor d."""

from __future__ import annotations

import math
import random
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations
from typing import Sequence

from .errors import CapExceeded
from .hypercore.graph import Graph


@dataclass(frozen=True)
class ExpansionCertificate:
    kind: str
    params: dict
    verdict: bool
    witness: tuple | None = None
    certified: bool = True
    notes: dict = field(default_factory=dict)

    def __bool__(self) -> bool:
        return self.verdict


def _frac(x) -> Fraction:
    if isinstance(x, Fraction):
        return x
    return Fraction(x).limit_denominator(10**9)


def ceil_frac(eps, size: int) -> int:
    """``ceil(eps * size)`` computed exactly."""
    return math.ceil(_frac(eps) * size)


def _mask(vs) -> int:
    m = 0
    for v in vs:
        m |= 1 << v
    return m


def _bits(m: int) -> list[int]:
    out = []
    while m:
        low = m & -m
        out.append(low.bit_length() - 1)
        m ^= low
    return out


def _popcount(m: int) -> int:
    return bin(m).count("1")


def _nbhd(masks, vs) -> int:
    out = 0
    for v in vs:
        out |= masks[v]
    return out


def is_eps_expander(g: Graph, eps, cap: int = 18, mode: str = "exhaustive",
                    samples: int = 2000, seed: int = 0) -> ExpansionCertificate:
    """Every two disjoint sets of size at least ``ceil(eps*n)`` are joined by an edge.

    It suffices to test sets of exactly that size: for each such set ``A`` the
    non-neighbours outside ``A`` must number fewer than the threshold.
    """
    if _frac(eps) <= 0:
        raise ValueError("eps must be positive")
    n = g.n
    s = ceil_frac(eps, n)
    params = {"eps": str(_frac(eps)), "n": n, "threshold": s}
    if 2 * s > n:
        return ExpansionCertificate("eps", params, True)
    masks = g.masks
    full = (1 << n) - 1
    if mode == "sample":
        rng = random.Random(seed)
        for _ in range(samples):
            a = sorted(rng.sample(range(n), s))
            rest = full & ~_mask(a) & ~_nbhd(masks, a)
            if _popcount(rest) >= s:
                return ExpansionCertificate("eps", params, False,
                                            (tuple(a), tuple(_bits(rest)[:s])))
        return ExpansionCertificate("eps", params, True, certified=False)
    if n > cap:
        raise CapExceeded(f"exhaustive eps-expansion check capped at n={cap}, got {n}")
    for a in combinations(range(n), s):
        rest = full & ~_mask(a) & ~_nbhd(masks, a)
        if _popcount(rest) >= s:
            return ExpansionCertificate("eps", params, False, (a, tuple(_bits(rest)[:s])))
    return ExpansionCertificate("eps", params, True)


def _check_parts(g: Graph, parts) -> tuple[list[int], list[int]]:
    x1, x2 = sorted(parts[0]), sorted(parts[1])
    if set(x1) & set(x2) or len(x1) + len(x2) != g.n or set(x1) | set(x2) != set(range(g.n)):
        raise ValueError("parts must partition the vertex set")
    return x1, x2


def is_bipartite_eps_expander(g: Graph, parts, eps, cap: int = 18) -> ExpansionCertificate:
    """Sets ``A1`` in part 1 and ``A2`` in part 2 of sizes at least ``eps|X_i|`` are joined."""
    x1, x2 = _check_parts(g, parts)
    s1, s2 = ceil_frac(eps, len(x1)), ceil_frac(eps, len(x2))
    params = {"eps": str(_frac(eps)), "sizes": [len(x1), len(x2)], "thresholds": [s1, s2]}
    return _biclique_free_check(g, x1, x2, s1, s2, cap, params)


def _biclique_free_check(g, x1, x2, s1, s2, cap, params, kind="bip-eps"):
    if s1 > len(x1) or s2 > len(x2):
        return ExpansionCertificate(kind, params, True)
    if max(len(x1), len(x2)) > cap:
        raise CapExceeded(f"exhaustive bipartite check capped at parts of size {cap}")
    masks = g.masks
    side2 = _mask(x2)
    for a in combinations(x1, max(s1, 0)):
        rest = side2 & ~_nbhd(masks, a)
        if _popcount(rest) >= s2:
            return ExpansionCertificate(kind, params, False, (a, tuple(_bits(rest)[:s2])))
    return ExpansionCertificate(kind, params, True)


def has_cross_edge_property(g: Graph, parts, size: int, cap: int = 24) -> ExpansionCertificate:
    """Any ``size`` vertices of part 1 and ``size`` of part 2 span an edge."""
    x1, x2 = _check_parts(g, parts)
    params = {"size": size}
    return _biclique_free_check(g, x1, x2, max(size, 1), max(size, 1), cap, params, "cross")


def is_expanding(g: Graph, m: int, d, cap: int = 2_000_000) -> ExpansionCertificate:
    """``|N(X)| >= d|X|`` for all nonempty ``X`` with ``|X| <= m``; ``N(X)`` excludes ``X``."""
    params = {"m": m, "d": d}
    if m <= 0:
        return ExpansionCertificate("md", params, True)
    n = g.n
    m = min(m, n)
    total = sum(math.comb(n, i) for i in range(1, m + 1))
    if total > cap:
        raise CapExceeded(f"{total} sets to check exceeds cap {cap}")
    masks = g.masks
    for size in range(1, m + 1):
        need = d * size
        for xs in combinations(range(n), size):
            nb = _nbhd(masks, xs) & ~_mask(xs)
            if _popcount(nb) < need:
                return ExpansionCertificate("md", params, False, (xs,))
    return ExpansionCertificate("md", params, True)


def expander_degree_bound(eps) -> float:
    e = float(_frac(eps))
    return 80 * (1 / e) * math.log(1 / e)


def random_expander(n: int, eps, seed: int, retries: int = 20,
                    certify: bool = True, cap: int = 18) -> tuple[Graph, ExpansionCertificate]:
    """Sample G(2n, beta/2n) with beta = 20(1/eps)ln(1/eps), drop vertices of
    degree above 4*beta, and keep a random induced n-vertex subgraph.

    With ``certify`` the result is checked exhaustively and resampled up to
    ``retries`` times; the last certificate is returned either way.
    """
    if n < 1:
        raise ValueError("n must be positive")
    e = float(_frac(eps))
    if e <= 0:
        raise ValueError("eps must be positive")
    big = 2 * n
    beta = 20 * (1 / e) * math.log(1 / e)
    p = min(max(beta / big, 0.0), 1.0)
    rng = random.Random(seed)
    cert = None
    g = None
    for attempt in range(max(retries, 1)):
        edges = [(u, v) for u, v in combinations(range(big), 2) if rng.random() < p]
        deg = [0] * big
        for u, v in edges:
            deg[u] += 1
            deg[v] += 1
        low = [v for v in range(big) if deg[v] <= 4 * p * big]
        if len(low) < n:
            continue
        keep = sorted(rng.sample(low, n))
        g = Graph.from_edges(big, edges).induced(keep)
        if not certify:
            return g, ExpansionCertificate("eps", {"eps": str(_frac(eps))}, True, certified=False)
        cert = is_eps_expander(g, eps, cap=cap)
        cert.notes["attempt"] = attempt
        if cert.verdict:
            return g, cert
    if g is None:
        raise RuntimeError("too few low-degree vertices in every attempt")
    return g, cert


@dataclass(frozen=True)
class BoostResult:
    graph: Graph
    kept: tuple[int, ...]
    removed_core: tuple[int, ...]
    parts: tuple[tuple[int, ...], tuple[int, ...]]


def boost_bipartite(g: Graph, parts, d: int, max_set: int | None = None,
                    cap: int = 2_000_000) -> BoostResult:
    """Grow a set ``A`` by violating sets ``B`` (``|N(B)| < d|B|`` in what is
    left), smallest first and lexicographically, then delete ``A`` with its
    neighbourhood.

    Only edges between the parts are used.  The returned graph is relabelled;
    ``kept[i]`` is the original id of vertex ``i``.  By construction no set of
    at most ``max_set`` vertices (default ``floor(n/4d)`` with ``n`` the larger
    part) violates expansion by ``d`` in the result.
    """
    x1, x2 = _check_parts(g, parts)
    side = {v: 0 for v in x1} | {v: 1 for v in x2}
    cross = Graph.from_edges(g.n, [(u, v) for u, v in g.edges if side[u] != side[v]])
    half = max(len(x1), len(x2))
    limit = max(half // (4 * d), 1) if max_set is None else max_set
    masks = cross.masks
    alive = (1 << g.n) - 1
    core = 0
    while True:
        found = None
        vs = _bits(alive)
        total = sum(math.comb(len(vs), i) for i in range(1, min(limit, len(vs)) + 1))
        if total > cap:
            raise CapExceeded(f"{total} candidate sets exceeds cap {cap}")
        for size in range(1, min(limit, len(vs)) + 1):
            for bs in combinations(vs, size):
                bm = _mask(bs)
                nb = _nbhd(masks, bs) & alive & ~bm
                if _popcount(nb) < d * size:
                    found = (bm, nb)
                    break
            if found:
                break
        if not found:
            break
        bm, nb = found
        core |= bm
        alive &= ~(bm | nb)
    kept = tuple(_bits(alive))
    return BoostResult(cross.induced(kept), kept, tuple(_bits(core)),
                       (tuple(i for i, v in enumerate(kept) if side[v] == 0),
                        tuple(i for i, v in enumerate(kept) if side[v] == 1)))


def boost(g: Graph, d: int = 2, max_set: int | None = None) -> BoostResult:
    """Split the vertices into the low and high halves by id and boost the
    bipartite graph of edges between them."""
    half = (g.n + 1) // 2
    parts = (tuple(range(half)), tuple(range(half, g.n)))
    return boost_bipartite(g, parts, d, max_set=max_set)


def equipartition(n: int) -> tuple[tuple[int, ...], tuple[int, ...]]:
    half = (n + 1) // 2
    return tuple(range(half)), tuple(range(half, n))


def neighbourhood(g: Graph, xs: Sequence[int]) -> set[int]:
    return set(_bits(_nbhd(g.masks, xs) & ~_mask(xs)))
