"""Immutable r-uniform hypergraphs.

Vertices are ``0..n-1``. Every edge is a sorted tuple of ``r`` distinct
vertices and the edge list itself is sorted lexicographically, so an edge is
identified by its index in ``Hypergraph.edges``.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from functools import cached_property
from itertools import combinations
from math import comb
from typing import Iterable, Sequence

import numpy as np

Edge = tuple[int, ...]


@dataclass(frozen=True)
class Hypergraph:
    n: int
    r: int
    edges: tuple[Edge, ...]
    # old vertex id of each new vertex, set by induced_subhypergraph()
    labels: tuple[int, ...] | None = field(default=None, compare=False, repr=False)

    def __post_init__(self):
        if self.r < 2:
            raise ValueError(f"uniformity must be at least 2, got r={self.r}")
        if self.n < 0:
            raise ValueError(f"vertex count must be non-negative, got n={self.n}")
        canon = sorted({_canonical_edge(e, self.n, self.r) for e in self.edges})
        if len(canon) != len(self.edges):
            raise ValueError("duplicate edges")
        object.__setattr__(self, "edges", tuple(canon))

    @classmethod
    def from_edges(cls, n: int, r: int, edges: Iterable[Iterable[int]]) -> "Hypergraph":
        return cls(n, r, tuple(tuple(e) for e in edges))

    @property
    def m(self) -> int:
        return len(self.edges)

    @cached_property
    def edge_index(self) -> dict[Edge, int]:
        return {e: i for i, e in enumerate(self.edges)}

    @cached_property
    def edge_masks(self) -> tuple[int, ...]:
        return tuple(to_mask(e) for e in self.edges)

    @cached_property
    def edge_mask_array(self) -> np.ndarray:
        """Edge masks as int64; only meaningful for n <= 62."""
        return np.array(self.edge_masks if self.n <= 62 else [], dtype=np.int64)

    @cached_property
    def edge_array(self) -> np.ndarray:
        """(m, r) int64 array of the edges."""
        return np.array(self.edges, dtype=np.int64).reshape(self.m, self.r)

    @cached_property
    def incidence(self) -> tuple[tuple[int, ...], ...]:
        """Edge indices containing each vertex."""
        inc: list[list[int]] = [[] for _ in range(self.n)]
        for i, e in enumerate(self.edges):
            for v in e:
                inc[v].append(i)
        return tuple(tuple(x) for x in inc)

    def has_edge(self, vertices: Iterable[int]) -> bool:
        return tuple(sorted(vertices)) in self.edge_index

    def degree(self, v: int) -> int:
        self._check_vertex(v)
        return len(self.incidence[v])

    def is_complete(self) -> bool:
        return self.m == comb(self.n, self.r)

    def relabel_map(self) -> dict[int, int]:
        """Map old vertex id -> new vertex id (identity if not induced)."""
        labels = self.labels if self.labels is not None else range(self.n)
        return {old: new for new, old in enumerate(labels)}

    def _check_vertex(self, v: int) -> None:
        if not 0 <= v < self.n:
            raise ValueError(f"vertex {v} out of range for n={self.n}")

    def to_json(self) -> dict:
        return {"n": self.n, "r": self.r, "edges": [list(e) for e in self.edges]}

    @classmethod
    def from_json(cls, data: dict) -> "Hypergraph":
        return cls.from_edges(data["n"], data["r"], data["edges"])


def _canonical_edge(e: Sequence[int], n: int, r: int) -> Edge:
    t = tuple(sorted(int(v) for v in e))
    if len(t) != r:
        raise ValueError(f"edge {tuple(e)} has {len(t)} vertices, expected {r}")
    if len(set(t)) != r:
        raise ValueError(f"edge {tuple(e)} repeats a vertex")
    if t and (t[0] < 0 or t[-1] >= n):
        raise ValueError(f"edge {tuple(e)} out of range for n={n}")
    return t


def to_mask(vertices: Iterable[int]) -> int:
    mask = 0
    for v in vertices:
        mask |= 1 << v
    return mask


def from_mask(mask: int) -> tuple[int, ...]:
    out = []
    v = 0
    while mask:
        if mask & 1:
            out.append(v)
        mask >>= 1
        v += 1
    return tuple(out)


def complete_hypergraph(n: int, r: int) -> Hypergraph:
    """H(n, r): every r-subset of ``range(n)`` is an edge."""
    if r < 2:
        raise ValueError(f"uniformity must be at least 2, got r={r}")
    return Hypergraph(n, r, tuple(combinations(range(n), r)))


def edgeless(n: int, r: int) -> Hypergraph:
    return Hypergraph(n, r, ())


def induced_subhypergraph(h: Hypergraph, vertices: Iterable[int]) -> Hypergraph:
    """H[U] relabeled to ``0..|U|-1`` in increasing order of the old ids.

    The old ids are kept in ``labels`` of the result (``labels[new] == old``).
    """
    keep = sorted(set(vertices))
    for v in keep:
        h._check_vertex(v)
    new_id = {old: new for new, old in enumerate(keep)}
    umask = to_mask(keep)
    edges = tuple(
        tuple(new_id[v] for v in e)
        for e, em in zip(h.edges, h.edge_masks)
        if em & ~umask == 0
    )
    return Hypergraph(len(keep), h.r, edges, labels=tuple(keep))


def complement(h: Hypergraph) -> Hypergraph:
    present = h.edge_index
    return Hypergraph(
        h.n, h.r, tuple(e for e in combinations(range(h.n), h.r) if e not in present)
    )


def unrank_combination(rank: int, n: int, r: int) -> Edge:
    """The ``rank``-th r-subset of ``range(n)`` in lexicographic order."""
    out = []
    v = 0
    for k in range(r, 0, -1):
        while True:
            c = comb(n - v - 1, k - 1)
            if rank < c:
                break
            rank -= c
            v += 1
        out.append(v)
        v += 1
    return tuple(out)


def random_hypergraph(n: int, r: int, m: int, seed: int) -> Hypergraph:
    """``m`` distinct r-subsets drawn uniformly without replacement."""
    total = comb(n, r)
    if m < 0 or m > total:
        raise ValueError(f"cannot draw m={m} edges from C({n},{r})={total} subsets")
    ranks = random.Random(seed).sample(range(total), m)
    return Hypergraph(n, r, tuple(unrank_combination(k, n, r) for k in ranks))
