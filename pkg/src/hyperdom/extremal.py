"""Upper directed p-domination number: exhaustive enumeration over all
orientations, and hill climbing for witness-backed lower bounds."""

from __future__ import annotations

import logging
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from itertools import product
from math import factorial

import numpy as np

from . import _kernel
from .domination import DEFAULT_NODE_BUDGET, greedy_gpl, min_directed_dominating
from .hypergraph import Hypergraph
from .orientation import Orientation, check_prefix_length, position_perms, random_orientation

log = logging.getLogger(__name__)

DEFAULT_CAP = 10**8


class EnumerationRefused(ValueError):
    """The orientation space is larger than the allowed cap."""

    def __init__(self, required: int, cap: int):
        self.required = required
        self.cap = cap
        super().__init__(f"enumeration needs {required} orientations, cap is {cap}")


@dataclass
class ExtremalResult:
    p: int
    value: int
    witness: Orientation
    exact: bool
    orientations_examined: int
    # False only when the witness value came from the greedy fallback
    certified: bool = True
    trace: list[tuple[int, int, int]] = field(default_factory=list, repr=False)


@dataclass(frozen=True)
class SearchConfig:
    restarts: int = 8
    max_steps: int = 200
    seed: int = 0
    plateau_limit: int = 20

    def __post_init__(self):
        for name in ("restarts", "max_steps", "plateau_limit"):
            if getattr(self, name) <= 0:
                raise ValueError(f"{name} must be positive")


def orientation_count(h: Hypergraph) -> int:
    return factorial(h.r) ** h.m


def decode_index(h: Hypergraph, index: int) -> Orientation:
    """Orientation at a mixed-radix counter index (edge 0 most significant)."""
    radix = factorial(h.r)
    ranks = []
    for _ in range(h.m):
        index, digit = divmod(index, radix)
        ranks.append(digit)
    return Orientation(h, tuple(reversed(ranks)))


def encode_index(d: Orientation) -> int:
    radix = factorial(d.hypergraph.r)
    index = 0
    for k in d.ranks:
        index = index * radix + k
    return index


def _check_symmetry(h: Hypergraph, fix_first_edge: bool) -> None:
    if fix_first_edge and not h.is_complete():
        raise ValueError("fixing the first edge's order is only sound for complete hypergraphs")


def _enumerate(h: Hypergraph, ps: list[int], lo: int, hi: int, threads: int):
    """(best value, smallest index) per prefix length over indices [lo, hi)."""
    if h.n <= _kernel.MAX_KERNEL_VERTICES:
        perms = position_perms(h.r)
        pre, restv, nrest = _kernel.build_tables(h.edges, h.r, ps, perms)
        bounds = np.linspace(lo, hi, max(1, min(threads, hi - lo)) + 1).astype(np.int64)
        chunks = [(int(a), int(b)) for a, b in zip(bounds[:-1], bounds[1:]) if b > a]

        def run(chunk):
            return _kernel.enumerate_range(
                h.n, h.m, len(perms), pre, restv, nrest, chunk[0], chunk[1]
            )

        if len(chunks) > 1:
            with ThreadPoolExecutor(threads) as pool:
                parts = list(pool.map(run, chunks))
        else:
            parts = [run(c) for c in chunks]
        out = []
        for k in range(len(ps)):
            best, idx = -1, -1
            for vals, idxs in parts:
                # chunks are in increasing index order, so strict > keeps the smallest index
                if vals[k] > best:
                    best, idx = int(vals[k]), int(idxs[k])
            out.append((best, idx))
        return out
    return _enumerate_python(h, ps, lo, hi)


def _enumerate_python(h: Hypergraph, ps: list[int], lo: int, hi: int):
    radix = factorial(h.r)
    best = [(-1, -1) for _ in ps]
    for index, ranks in enumerate(product(range(radix), repeat=h.m)):
        if index < lo:
            continue
        if index >= hi:
            break
        d = Orientation(h, ranks)
        for k, p in enumerate(ps):
            cert, stats = min_directed_dominating(d, p)
            if not stats.proven_optimal:
                raise RuntimeError("exact solver budget exhausted during enumeration")
            if len(cert) > best[k][0]:
                best[k] = (len(cert), index)
    return best


def gamma_upper_exact_all(
    h: Hypergraph,
    ps: list[int] | None = None,
    cap: int = DEFAULT_CAP,
    threads: int = 1,
    fix_first_edge: bool = False,
) -> dict[int, ExtremalResult]:
    """Exact upper p-domination numbers for several p in one enumeration pass."""
    ps = list(range(1, h.r)) if ps is None else list(ps)
    for p in ps:
        check_prefix_length(h, p)
    _check_symmetry(h, fix_first_edge)
    total = orientation_count(h)
    if total > cap:
        raise EnumerationRefused(total, cap)
    hi = total // factorial(h.r) if fix_first_edge and h.m else total
    found = _enumerate(h, ps, 0, hi, threads)
    return {
        p: ExtremalResult(p, value, decode_index(h, index), True, hi)
        for p, (value, index) in zip(ps, found)
    }


def gamma_upper_exact(
    h: Hypergraph,
    p: int,
    cap: int = DEFAULT_CAP,
    threads: int = 1,
    fix_first_edge: bool = False,
) -> ExtremalResult:
    """Max of gamma_p(D) over every orientation D of ``h``.

    Raises EnumerationRefused carrying (r!)^e(H) when that exceeds ``cap``.
    """
    return gamma_upper_exact_all(h, [p], cap, threads, fix_first_edge)[p]


def _evaluate(d: Orientation, p: int, budget: int) -> tuple[int, bool]:
    cert, stats = min_directed_dominating(d, p, budget)
    if stats.proven_optimal:
        return len(cert), True
    return len(greedy_gpl(d, p)), False


def _climb(h: Hypergraph, p: int, cfg: SearchConfig, restart: int, budget: int):
    init_seed, move_seed = np.random.SeedSequence([cfg.seed, restart]).spawn(2)
    rng = np.random.default_rng(move_seed)
    radix = factorial(h.r)
    cur = random_orientation(h, init_seed)
    cur_val, cur_ok = _evaluate(cur, p, budget)
    best = (cur_val, cur_ok, cur)
    trace = [(restart, 0, cur_val)]
    examined = 1
    plateau = 0
    for step in range(1, cfg.max_steps + 1):
        if h.m == 0 or radix == 1:
            break
        i = int(rng.integers(h.m))
        j = int(rng.integers(radix - 1))
        if j >= cur.ranks[i]:
            j += 1
        cand = cur.with_edge_rank(i, j)
        val, ok = _evaluate(cand, p, budget)
        examined += 1
        if val > cur_val or (val == cur_val and plateau < cfg.plateau_limit):
            plateau = 0 if val > cur_val else plateau + 1
            cur, cur_val, cur_ok = cand, val, ok
            if _better((cur_val, cur_ok), best[:2]):
                best = (cur_val, cur_ok, cur)
        trace.append((restart, step, cur_val))
    return best, trace, examined


def _better(a: tuple[int, bool], b: tuple[int, bool]) -> bool:
    """Certified values beat heuristic ones; then larger wins."""
    if a[1] != b[1]:
        return a[1]
    return a[0] > b[0]


def gamma_upper_search(
    h: Hypergraph,
    p: int,
    cfg: SearchConfig = SearchConfig(),
    threads: int = 1,
    budget: int = DEFAULT_NODE_BUDGET,
) -> ExtremalResult:
    """Hill climbing over orientations maximizing gamma_p.

    A move re-permutes one edge. Strict improvements are always taken and up
    to ``plateau_limit`` consecutive equal-value moves are allowed. The
    returned value is a lower bound on the upper p-domination number whenever
    ``certified`` is true, since the witness orientation is explicit.
    """
    check_prefix_length(h, p)

    def run(k):
        return _climb(h, p, cfg, k, budget)

    if threads > 1:
        with ThreadPoolExecutor(threads) as pool:
            runs = list(pool.map(run, range(cfg.restarts)))
    else:
        runs = [run(k) for k in range(cfg.restarts)]

    best = None
    trace: list[tuple[int, int, int]] = []
    examined = 0
    for (val, ok, d), tr, ex in runs:
        trace.extend(tr)
        examined += ex
        if best is None or _better((val, ok), best[:2]):
            best = (val, ok, d)
    val, ok, d = best
    log.debug("search p=%d best=%d certified=%s", p, val, ok)
    return ExtremalResult(p, val, d, False, examined, certified=ok, trace=trace)


@dataclass
class MonotonicityReport:
    values: dict[int, int]
    holds: bool
    orientations_examined: int


def verify_eq1_monotonicity(
    h: Hypergraph, cap: int = DEFAULT_CAP, threads: int = 1, fix_first_edge: bool = False
) -> MonotonicityReport:
    """Check that the exact upper p-domination number is nondecreasing in p."""
    results = gamma_upper_exact_all(h, None, cap, threads, fix_first_edge)
    values = {p: res.value for p, res in results.items()}
    ps = sorted(values)
    holds = all(values[i] <= values[j] for i in ps for j in ps if i < j)
    examined = next(iter(results.values())).orientations_examined if results else 0
    return MonotonicityReport(values, holds, examined)


def tournament_domination_bound(n: int) -> float:
    """log2(n + 1): every tournament on n vertices has a dominating set this small."""
    return float(np.log2(n + 1))


