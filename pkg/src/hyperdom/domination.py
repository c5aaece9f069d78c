"""Directed p-domination: checking, exact minimum, greedy partition, and the
undirected variant.

A set S directed-p-dominates an orientation D when every vertex outside S
lies in some ordered edge, after position p, whose first p vertices are all
in S. Internally vertex sets are int bitmasks.
"""

from __future__ import annotations

import time
from dataclasses import dataclass, field
from itertools import combinations
from typing import Iterable

import numpy as np

from .hypergraph import Hypergraph, from_mask, to_mask
from .orientation import MASK_BITS, Orientation, check_prefix_length, lex_key

DEFAULT_NODE_BUDGET = 2_000_000


@dataclass(frozen=True)
class DominationCertificate:
    dominating_set: frozenset[int]
    # dominated vertex -> index of an edge witnessing it
    witnesses: dict[int, int] = field(default_factory=dict)

    def __len__(self):
        return len(self.dominating_set)


@dataclass
class SolveStats:
    nodes_explored: int = 0
    best_found: int = 0
    proven_optimal: bool = False
    elapsed_ms: float = 0.0


def _witness_for(d: Orientation, p: int, smask: int, u: int) -> int | None:
    tab = d.table(p)
    bit = 1 << u
    for i in d.hypergraph.incidence[u]:
        if tab.rest[i] & bit and tab.prefix[i] & ~smask == 0:
            return i
    return None


def certificate(d: Orientation, s: Iterable[int], p: int) -> DominationCertificate | None:
    """Witness edges for every vertex outside ``s``, or None if one is missing."""
    check_prefix_length(d.hypergraph, p)
    s = frozenset(s)
    smask = to_mask(s)
    witnesses = {}
    for u in range(d.hypergraph.n):
        if u in s:
            continue
        w = _witness_for(d, p, smask, u)
        if w is None:
            return None
        witnesses[u] = w
    return DominationCertificate(s, witnesses)


def is_directed_p_dominating(d: Orientation, s: Iterable[int], p: int) -> bool:
    s = set(s)
    for v in s:
        d.hypergraph._check_vertex(v)
    return certificate(d, s, p) is not None


def check_certificate(d: Orientation, cert: DominationCertificate, p: int) -> bool:
    """Re-verify every witness from the raw edge orders."""
    check_prefix_length(d.hypergraph, p)
    s = cert.dominating_set
    for u in range(d.hypergraph.n):
        if u in s:
            continue
        i = cert.witnesses.get(u)
        if i is None or not 0 <= i < d.hypergraph.m:
            return False
        order = d.order(i)
        if u not in order[p:] or not set(order[:p]) <= s:
            return False
    return True


def _dominated_mask(prefixes: list[list[int]], smask: int, full: int) -> int:
    """Vertices in S or dominated by S."""
    out = smask
    rest = full & ~smask
    while rest:
        low = rest & -rest
        u = low.bit_length() - 1
        for pm in prefixes[u]:
            if pm & ~smask == 0:
                out |= low
                break
        rest ^= low
    return out


def _prefixes_by_vertex(d: Orientation, p: int) -> list[list[int]]:
    """For each u, the distinct prefix masks of edges holding u after position p."""
    tab = d.table(p)
    out: list[set[int]] = [set() for _ in range(d.hypergraph.n)]
    for pm, rm in zip(tab.prefix, tab.rest):
        for u in from_mask(rm):
            out[u].add(pm)
    return [sorted(x, key=lex_key) for x in out]


def undominatable_core(d: Orientation, p: int) -> frozenset[int]:
    """Vertices never positioned after the first p entries of an edge."""
    check_prefix_length(d.hypergraph, p)
    reachable = 0
    for rm in d.table(p).rest:
        reachable |= rm
    return frozenset(v for v in range(d.hypergraph.n) if not reachable >> v & 1)


def _greedy_step(h: Hypergraph, tab, x: int) -> tuple[int, int] | None:
    """(A, vertices A dominates) maximizing the gain inside the residual set x."""
    reach: dict[int, int] = {}
    for em, pm, rm in zip(h.edge_masks, tab.prefix, tab.rest):
        if em & ~x == 0:
            reach[pm] = reach.get(pm, 0) | rm
    if not reach:
        return None
    gain = max(v.bit_count() for v in reach.values())
    a = min((pm for pm, v in reach.items() if v.bit_count() == gain), key=lex_key)
    return a, reach[a]


def _greedy_step_numpy(arrays, x: int) -> tuple[int, int] | None:
    em, pre, rest = arrays
    inside = (em & ~np.int64(x)) == 0
    if not inside.any():
        return None
    keys, inv = np.unique(pre[inside], return_inverse=True)
    reach = np.zeros(len(keys), dtype=np.int64)
    np.bitwise_or.at(reach, inv, rest[inside])
    gains = np.bitwise_count(reach)
    top = gains == gains.max()
    a = min(keys[top].tolist(), key=lex_key)
    return a, int(reach[np.searchsorted(keys, a)])


def greedy_gpl(d: Orientation, p: int, vectorize: bool = True) -> DominationCertificate:
    """Greedy partition: repeatedly take the p-set that dominates the most
    remaining vertices inside the residual induced orientation, until fewer
    than 2r - 1 vertices remain; those join the set."""
    h = d.hypergraph
    check_prefix_length(h, p)
    tab = d.table(p)
    if vectorize and h.n <= MASK_BITS:
        arrays = (h.edge_mask_array,) + tuple(
            np.array(a, dtype=np.int64).reshape(-1) for a in (tab.prefix, tab.rest))

        def step(x):
            return _greedy_step_numpy(arrays, x)
    else:
        def step(x):
            return _greedy_step(h, tab, x)

    x = (1 << h.n) - 1
    smask = 0
    while x.bit_count() >= 2 * h.r - 1:
        found = step(x)
        if found is None:
            break
        a, reach = found
        smask |= a
        x &= ~(a | reach)
    smask |= x
    cert = certificate(d, from_mask(smask), p)
    assert cert is not None
    return cert


def min_directed_dominating(
    d: Orientation, p: int, budget: int = DEFAULT_NODE_BUDGET
) -> tuple[DominationCertificate, SolveStats]:
    """Minimum directed p-dominating set by depth-first branch and bound.

    The incumbent starts from the greedy solution and the core vertices are
    forced in. Each node branches on the smallest undominated vertex u: either
    u joins S or some vertex of a prefix that could dominate u does. When more
    than ``budget`` nodes are explored the best set so far is returned with
    ``proven_optimal=False``.
    """
    t0 = time.perf_counter()
    h = d.hypergraph
    check_prefix_length(h, p)
    full = (1 << h.n) - 1
    prefixes = _prefixes_by_vertex(d, p)
    core = to_mask(undominatable_core(d, p))

    incumbent = to_mask(greedy_gpl(d, p).dominating_set)
    best = [incumbent, incumbent.bit_count()]
    stats = SolveStats()
    seen: set[int] = set()
    exhausted = False

    def search(smask: int) -> None:
        nonlocal exhausted
        if exhausted or smask in seen:
            return
        seen.add(smask)
        stats.nodes_explored += 1
        if stats.nodes_explored > budget:
            exhausted = True
            return
        size = smask.bit_count()
        undominated = full & ~_dominated_mask(prefixes, smask, full)
        if not undominated:
            if size < best[1]:
                best[0], best[1] = smask, size
            return
        if size + 1 >= best[1]:
            return
        u = (undominated & -undominated).bit_length() - 1
        cands = 1 << u
        for pm in prefixes[u]:
            cands |= pm & ~smask
        while cands:
            low = cands & -cands
            search(smask | low)
            cands ^= low

    search(core)
    stats.best_found = best[1]
    stats.proven_optimal = not exhausted
    stats.elapsed_ms = (time.perf_counter() - t0) * 1000
    cert = certificate(d, from_mask(best[0]), p)
    assert cert is not None
    return cert, stats


def gamma(d: Orientation, p: int, budget: int = DEFAULT_NODE_BUDGET) -> int:
    """gamma_p(D); raises if the node budget is exhausted."""
    cert, stats = min_directed_dominating(d, p, budget)
    if not stats.proven_optimal:
        raise RuntimeError(f"node budget {budget} exhausted before optimality was proven")
    return len(cert)


def is_p_dominating_undirected(h: Hypergraph, s: Iterable[int], p: int) -> bool:
    check_prefix_length(h, p)
    smask = to_mask(s)
    for u in range(h.n):
        if smask >> u & 1:
            continue
        if not any((h.edge_masks[i] & smask).bit_count() >= p for i in h.incidence[u]):
            return False
    return True


def gamma_p_undirected(h: Hypergraph, p: int) -> int:
    """Minimum undirected p-dominating set size, by subsets of increasing size."""
    check_prefix_length(h, p)
    for k in range(h.n + 1):
        for s in combinations(range(h.n), k):
            if is_p_dominating_undirected(h, s, p):
                return k
    return h.n
