"""Proper hypergraph colorings, chromatic number, independence and clique
numbers for small instances."""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations
from typing import Sequence

from .hypergraph import Hypergraph

DEFAULT_VERTEX_CAP = 20


class CapExceeded(ValueError):
    pass


@dataclass(frozen=True)
class Coloring:
    assignment: tuple[int, ...]

    def __post_init__(self):
        object.__setattr__(self, "assignment", tuple(int(c) for c in self.assignment))

    @property
    def num_colors(self) -> int:
        return len(set(self.assignment))

    def classes(self) -> list[tuple[int, ...]]:
        """Nonempty color classes ordered by color id."""
        by_color: dict[int, list[int]] = {}
        for v, c in enumerate(self.assignment):
            by_color.setdefault(c, []).append(v)
        return [tuple(by_color[c]) for c in sorted(by_color)]

    def to_json(self) -> dict:
        return {"num_colors": self.num_colors, "assignment": list(self.assignment)}

    @classmethod
    def from_json(cls, data: dict) -> "Coloring":
        c = cls(tuple(data["assignment"]))
        if data.get("num_colors", c.num_colors) != c.num_colors:
            raise ValueError("num_colors disagrees with assignment")
        return c


def is_proper(h: Hypergraph, c: Coloring | Sequence[int]) -> bool:
    """True iff no edge is monochromatic."""
    colors = c.assignment if isinstance(c, Coloring) else tuple(c)
    if len(colors) != h.n:
        raise ValueError(f"coloring has {len(colors)} entries for {h.n} vertices")
    return all(len({colors[v] for v in e}) >= 2 for e in h.edges)


def _check_cap(h: Hypergraph, cap: int) -> None:
    if h.n > cap:
        raise CapExceeded(f"n={h.n} exceeds the exact-search cap of {cap} vertices")


def _edges_by_last(h: Hypergraph) -> list[list[tuple[int, ...]]]:
    out: list[list[tuple[int, ...]]] = [[] for _ in range(h.n)]
    for e in h.edges:
        out[e[-1]].append(e)
    return out


def _colorable(h: Hypergraph, k: int, closing: list[list[tuple[int, ...]]]) -> list[int] | None:
    colors = [-1] * h.n

    def place(v: int, used: int) -> bool:
        if v == h.n:
            return True
        # new colors are opened in order, which removes color-permutation symmetry
        for c in range(min(used + 1, k)):
            colors[v] = c
            if all(any(colors[u] != c for u in e[:-1]) for e in closing[v]):
                if place(v + 1, max(used, c + 1)):
                    return True
        colors[v] = -1
        return False

    return colors if place(0, 0) else None


def chromatic_number_exact(h: Hypergraph, cap: int = DEFAULT_VERTEX_CAP) -> int:
    _check_cap(h, cap)
    if h.n == 0:
        return 0
    closing = _edges_by_last(h)
    for k in range(1, h.n + 1):
        if _colorable(h, k, closing) is not None:
            return k
    raise AssertionError("n colors always suffice")


def optimal_coloring(h: Hypergraph, cap: int = DEFAULT_VERTEX_CAP) -> Coloring:
    k = chromatic_number_exact(h, cap)
    return Coloring(tuple(_colorable(h, k, _edges_by_last(h)) or ()))


def greedy_complement_coloring(h: Hypergraph) -> Coloring:
    """Proper coloring of the complement of ``h`` whose classes are cliques of
    ``h`` or have fewer than r vertices. Vertices go, in index order, into the
    first class that stays valid."""
    classes: list[list[int]] = []
    assignment = []
    for v in range(h.n):
        for idx, cls in enumerate(classes):
            if len(cls) + 1 < h.r or all(
                h.has_edge(sub + (v,)) for sub in combinations(cls, h.r - 1)
            ):
                cls.append(v)
                assignment.append(idx)
                break
        else:
            classes.append([v])
            assignment.append(len(classes) - 1)
    return Coloring(tuple(assignment))


def _max_set(h: Hypergraph, fits) -> int:
    best = 0
    chosen: list[int] = []

    def grow(v: int) -> None:
        nonlocal best
        if len(chosen) + (h.n - v) <= best:
            return
        if v == h.n:
            best = len(chosen)
            return
        if fits(chosen, v):
            chosen.append(v)
            grow(v + 1)
            chosen.pop()
        grow(v + 1)

    grow(0)
    return best


def independence_number(h: Hypergraph, cap: int = DEFAULT_VERTEX_CAP) -> int:
    """Largest vertex set containing no edge."""
    _check_cap(h, cap)
    closing = _edges_by_last(h)

    def fits(chosen, v):
        s = set(chosen)
        return not any(all(u in s for u in e[:-1]) for e in closing[v])

    return _max_set(h, fits)


def clique_number(h: Hypergraph, cap: int = DEFAULT_VERTEX_CAP) -> int:
    """Largest vertex set all of whose r-subsets are edges."""
    _check_cap(h, cap)

    def fits(chosen, v):
        return all(h.has_edge(sub + (v,)) for sub in combinations(chosen, h.r - 1))

    return _max_set(h, fits)
