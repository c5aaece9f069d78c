"""Orientations: one linear order per edge, plus directed neighborhoods.

An order is stored by its lexicographic rank among the ``r!`` permutations of
the (sorted) edge, so rank 0 is the increasing order.
"""

from __future__ import annotations

from collections import defaultdict
from dataclasses import dataclass, field
from functools import lru_cache
from itertools import combinations, permutations
from math import factorial
from typing import Iterable

import numpy as np

from .hypergraph import Hypergraph, from_mask, to_mask

#: vertex sets of hypergraphs with at most this many vertices fit in an int64 mask
MASK_BITS = 62

#: default vertex count up to which max_directed_degree scans every p-set
FULL_SCAN_THRESHOLD = 24


@lru_cache(maxsize=None)
def position_perms(r: int) -> tuple[tuple[int, ...], ...]:
    return tuple(permutations(range(r)))


def order_from_rank(edge: tuple[int, ...], rank: int) -> tuple[int, ...]:
    return tuple(edge[i] for i in position_perms(len(edge))[rank])


def rank_of_order(edge: tuple[int, ...], order: Iterable[int]) -> int:
    order = tuple(order)
    if sorted(order) != list(edge):
        raise ValueError(f"order {order} is not a permutation of edge {edge}")
    pos = {v: i for i, v in enumerate(edge)}
    return position_perms(len(edge)).index(tuple(pos[v] for v in order))


@dataclass(frozen=True)
class PrefixTable:
    """Per-edge masks for a fixed prefix length p."""

    prefix: tuple[int, ...]  # mask of the first p vertices
    rest: tuple[int, ...]  # mask of the remaining r - p vertices


@dataclass(frozen=True, eq=False)
class Orientation:
    hypergraph: Hypergraph
    ranks: tuple[int, ...]
    _tables: dict = field(default_factory=dict, repr=False)
    _orders: list = field(default_factory=list, repr=False)

    def __post_init__(self):
        h = self.hypergraph
        if len(self.ranks) != h.m:
            raise ValueError(f"expected {h.m} edge orders, got {len(self.ranks)}")
        nperm = factorial(h.r)
        ranks = tuple(int(k) for k in self.ranks)
        if any(not 0 <= k < nperm for k in ranks):
            raise ValueError("permutation rank out of range")
        object.__setattr__(self, "ranks", ranks)

    @classmethod
    def from_orders(cls, h: Hypergraph, orders: Iterable[Iterable[int]]) -> "Orientation":
        orders = list(orders)
        if len(orders) != h.m:
            raise ValueError(f"expected {h.m} edge orders, got {len(orders)}")
        return cls(h, tuple(rank_of_order(e, o) for e, o in zip(h.edges, orders)))

    @classmethod
    def increasing(cls, h: Hypergraph) -> "Orientation":
        """Every edge ordered by vertex id (transitive on complete graphs)."""
        return cls(h, (0,) * h.m)

    def __eq__(self, other):
        if not isinstance(other, Orientation):
            return NotImplemented
        return self.hypergraph == other.hypergraph and self.ranks == other.ranks

    def __hash__(self):
        return hash((self.hypergraph, self.ranks))

    @property
    def orders(self) -> tuple[tuple[int, ...], ...]:
        return tuple(order_from_rank(e, k) for e, k in zip(self.hypergraph.edges, self.ranks))

    def order(self, i: int) -> tuple[int, ...]:
        return order_from_rank(self.hypergraph.edges[i], self.ranks[i])

    def table(self, p: int) -> PrefixTable:
        check_prefix_length(self.hypergraph, p)
        tab = self._tables.get(p)
        if tab is None:
            h = self.hypergraph
            if h.n <= MASK_BITS and h.m:
                orders = self.order_array()
                bits = np.left_shift(np.int64(1), orders)
                pre = bits[:, :p].sum(axis=1).tolist()
                rest = bits[:, p:].sum(axis=1).tolist()
            else:
                pre, rest = [], []
                for i in range(h.m):
                    o = self.order(i)
                    pre.append(to_mask(o[:p]))
                    rest.append(to_mask(o[p:]))
            tab = PrefixTable(tuple(pre), tuple(rest))
            self._tables[p] = tab
        return tab

    def order_array(self) -> np.ndarray:
        """(m, r) array of the edge orders."""
        if not self._orders:
            h = self.hypergraph
            perms = np.array(position_perms(h.r), dtype=np.int64)
            idx = perms[np.array(self.ranks, dtype=np.int64)].reshape(h.m, h.r)
            self._orders.append(np.take_along_axis(h.edge_array, idx, axis=1))
        return self._orders[0]

    def with_edge_rank(self, i: int, rank: int) -> "Orientation":
        """Copy with edge ``i`` re-permuted; cached tables are patched, not rebuilt."""
        ranks = list(self.ranks)
        ranks[i] = rank
        new = Orientation(self.hypergraph, tuple(ranks))
        o = order_from_rank(self.hypergraph.edges[i], rank)
        for p, tab in self._tables.items():
            pre, rest = list(tab.prefix), list(tab.rest)
            pre[i], rest[i] = to_mask(o[:p]), to_mask(o[p:])
            new._tables[p] = PrefixTable(tuple(pre), tuple(rest))
        return new

    def induced(self, sub: Hypergraph) -> "Orientation":
        """Restriction to an induced subhypergraph built by induced_subhypergraph()."""
        labels = sub.labels if sub.labels is not None else tuple(range(sub.n))
        ranks = []
        for e in sub.edges:
            old = tuple(labels[v] for v in e)
            k = self.hypergraph.edge_index[old]
            new_id = {labels[v]: v for v in e}
            ranks.append(rank_of_order(e, (new_id[v] for v in self.order(k))))
        return Orientation(sub, tuple(ranks))


def check_prefix_length(h: Hypergraph, p: int) -> None:
    if not 1 <= p <= h.r - 1:
        raise ValueError(f"prefix length p={p} outside [1, {h.r - 1}]")


def random_orientation(h: Hypergraph, seed) -> Orientation:
    """Each edge gets an independent uniformly random linear order."""
    rng = np.random.default_rng(seed)
    ranks = rng.integers(0, factorial(h.r), size=h.m)
    return Orientation(h, tuple(ranks.tolist()))


def _set_mask(d: Orientation, a: Iterable[int]) -> tuple[int, int]:
    a = set(a)
    for v in a:
        d.hypergraph._check_vertex(v)
    if not 1 <= len(a) <= d.hypergraph.r - 1:
        raise ValueError(f"|A|={len(a)} outside [1, {d.hypergraph.r - 1}]")
    return to_mask(a), len(a)


def directed_edge_set(d: Orientation, a: Iterable[int]) -> frozenset[int]:
    """Indices of edges whose first |A| vertices are exactly A."""
    amask, p = _set_mask(d, a)
    tab = d.table(p)
    return frozenset(i for i, pm in enumerate(tab.prefix) if pm == amask)


def directed_neighborhood(d: Orientation, a: Iterable[int]) -> frozenset[int]:
    amask, p = _set_mask(d, a)
    tab = d.table(p)
    out = 0
    for pm, rm in zip(tab.prefix, tab.rest):
        if pm == amask:
            out |= rm
    return frozenset(from_mask(out))


def directed_degree(d: Orientation, a: Iterable[int]) -> int:
    return len(directed_edge_set(d, a))


def n_arrow(d: Orientation, a: Iterable[int]) -> int:
    return len(directed_neighborhood(d, a))


def lex_key(mask: int) -> tuple[int, ...]:
    return from_mask(mask)


def prefix_degrees(d: Orientation, p: int) -> dict[int, int]:
    """deg(A) for every p-set A that is the prefix of at least one edge."""
    deg: dict[int, int] = defaultdict(int)
    for pm in d.table(p).prefix:
        deg[pm] += 1
    return dict(deg)


def max_directed_degree(
    d: Orientation, p: int, threshold: int = FULL_SCAN_THRESHOLD
) -> tuple[frozenset[int], int]:
    """Lexicographically smallest p-set of maximum directed degree, and that degree."""
    h = d.hypergraph
    check_prefix_length(h, p)
    if h.n < p:
        raise ValueError(f"no {p}-subsets of {h.n} vertices")
    deg = prefix_degrees(d, p)
    if h.n <= threshold:
        best, best_set = -1, None
        # combinations() yields p-sets in lexicographic order
        for a in combinations(range(h.n), p):
            k = deg.get(to_mask(a), 0)
            if k > best:
                best, best_set = k, a
        return frozenset(best_set), best
    if not deg:
        return frozenset(range(p)), 0
    top = max(deg.values())
    winner = min((m for m, k in deg.items() if k == top), key=lex_key)
    return frozenset(from_mask(winner)), top
