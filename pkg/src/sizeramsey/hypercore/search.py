"""Injective sub-hypergraph search by backtracking."""

from __future__ import annotations

from itertools import permutations
from typing import Sequence

from ..errors import BudgetExceeded
from .graph import Graph, Hypergraph


def _as_hyper(x) -> Hypergraph:
    return x.to_hypergraph() if isinstance(x, Graph) else x


def _search_order(pattern: Hypergraph, first: Sequence[int] = ()) -> list[int]:
    """Most-constrained-first vertex order: prefer vertices sharing edges with placed ones."""
    shadow = pattern.shadow_masks
    order = list(first)
    placed = 0
    for v in order:
        placed |= 1 << v
    remaining = [v for v in range(pattern.n) if not placed >> v & 1]
    while remaining:
        best = max(remaining, key=lambda v: (bin(shadow[v] & placed).count("1"),
                                             pattern.degree(v), -v))
        order.append(best)
        placed |= 1 << best
        remaining.remove(best)
    return order


def find_subhypergraph(pattern, host, anchor: tuple | None = None,
                       budget: int | None = None) -> tuple[int, ...] | None:
    """Return an injective map ``pattern -> host`` sending edges to edges, or ``None``.

    Both arguments may be graphs or hypergraphs of the same uniformity.  With
    ``anchor`` (a host edge) only copies using that edge are considered.
    ``budget`` bounds the number of search nodes.
    """
    p, h = _as_hyper(pattern), _as_hyper(host)
    if p.r != h.r:
        raise ValueError("uniformities differ")
    if p.n > h.n:
        return None
    if not p.edges:
        if anchor is not None:
            return None
        return tuple(range(p.n))
    host_edges = h.edges
    host_shadow = h.shadow_masks
    host_deg = [h.degree(v) for v in range(h.n)]
    pat_deg = [p.degree(v) for v in range(p.n)]
    pat_shadow = p.shadow_masks
    full = (1 << h.n) - 1
    nodes = [0]

    # edges to test once their last vertex (in search order) is placed
    def plan(order):
        pos = {v: i for i, v in enumerate(order)}
        closing = [[] for _ in order]
        for e in p.edges:
            closing[max(pos[v] for v in e)].append(e)
        back = [0] * len(order)
        for i, v in enumerate(order):
            for u in order[:i]:
                if pat_shadow[v] >> u & 1:
                    back[i] |= 1 << u
        return closing, back

    def run(order, phi, used, start):
        closing, back = plan(order)
        k = len(order)

        def rec(i, used):
            if i == k:
                return True
            nodes[0] += 1
            if budget is not None and nodes[0] > budget:
                raise BudgetExceeded(f"subgraph search exceeded {budget} nodes")
            v = order[i]
            if i < start:
                return rec(i + 1, used)
            cand = full & ~used
            b = back[i]
            while b:
                low = b & -b
                cand &= host_shadow[phi[low.bit_length() - 1]]
                b ^= low
            need = pat_deg[v]
            while cand:
                low = cand & -cand
                x = low.bit_length() - 1
                cand ^= low
                if host_deg[x] < need:
                    continue
                phi[v] = x
                if all(tuple(sorted(phi[w] for w in e)) in host_edges for e in closing[i]):
                    if rec(i + 1, used | low):
                        return True
                phi[v] = -1
            return False

        return rec(0, used)

    if anchor is None:
        order = _search_order(p)
        phi = [-1] * p.n
        if run(order, phi, 0, 0):
            return tuple(phi)
        return None

    anchor = tuple(sorted(anchor))
    if anchor not in host_edges:
        raise ValueError("anchor is not a host edge")
    for e in sorted(p.edges):
        order = _search_order(p, e)
        for img in permutations(anchor):
            phi = [-1] * p.n
            used = 0
            for v, x in zip(e, img):
                phi[v] = x
                used |= 1 << x
            if any(host_deg[x] < pat_deg[v] for v, x in zip(e, img)):
                continue
            if run(order, phi, used, len(e)):
                return tuple(phi)
    return None
