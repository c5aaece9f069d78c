"""Invariant suites run by ``hyperdom verify``.

Every suite returns a SuiteResult; ``passed`` is False as soon as a single
instance violates the checked property.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from itertools import combinations, product
from math import comb, factorial

import numpy as np

from .bounds import (
    certified_lower,
    chi_bound_thm3,
    cover_bound,
    first_moment_certifies,
    first_moment_expectation_log,
    upper_bound_thm2i,
)
from .coloring import (
    Coloring,
    chromatic_number_exact,
    clique_number,
    greedy_complement_coloring,
    independence_number,
    is_proper,
)
from .domination import (
    check_certificate,
    greedy_gpl,
    is_directed_p_dominating,
    min_directed_dominating,
)
from .extremal import gamma_upper_exact, gamma_upper_exact_all, verify_eq1_monotonicity
from .hypergraph import Hypergraph, complement, complete_hypergraph, random_hypergraph
from .orientation import Orientation, directed_degree, max_directed_degree, random_orientation


@dataclass
class SuiteResult:
    name: str
    checked: int = 0
    failures: list[str] = field(default_factory=list)
    detail: dict = field(default_factory=dict)

    @property
    def passed(self) -> bool:
        return not self.failures

    def fail(self, msg: str) -> None:
        self.failures.append(msg)

    def line(self) -> str:
        status = "PASS" if self.passed else "FAIL"
        return f"{status} {self.name}: {self.checked} checks, {len(self.failures)} failures"


def all_orientations(h: Hypergraph):
    for ranks in product(range(factorial(h.r)), repeat=h.m):
        yield Orientation(h, ranks)


def orientations(h: Hypergraph, exhaustive_limit: int, samples: int, seed: int = 0):
    """Every orientation if there are at most ``exhaustive_limit``, else a seeded sample."""
    if factorial(h.r) ** h.m <= exhaustive_limit:
        yield from all_orientations(h)
    else:
        for k in range(samples):
            yield random_orientation(h, [seed, h.n, h.r, k])


def naive_gamma(d: Orientation, p: int) -> int:
    """Smallest dominating set by trying subsets in increasing size."""
    n = d.hypergraph.n
    for k in range(n + 1):
        for s in combinations(range(n), k):
            if is_directed_p_dominating(d, s, p):
                return k
    return n


def suite_prefix_identity(budget: int = 1000, n_max: int = 6, r_max: int = 4) -> SuiteResult:
    res = SuiteResult("prefix-identity")
    for r in range(2, r_max + 1):
        for n in range(r, n_max + 1):
            h = complete_hypergraph(n, r)
            for d in orientations(h, 10**4, budget):
                for p in range(1, r):
                    total = sum(directed_degree(d, a) for a in combinations(range(n), p))
                    res.checked += 1
                    if total != h.m:
                        res.fail(f"H({n},{r}) p={p} ranks={d.ranks}: sum {total} != {h.m}")
    return res


def suite_averaging(budget: int = 1000) -> SuiteResult:
    res = SuiteResult("averaging")
    cases = [(complete_hypergraph(4, 3), None), (complete_hypergraph(5, 2), None),
             (complete_hypergraph(8, 3), budget)]
    for h, samples in cases:
        ds = all_orientations(h) if samples is None else (
            random_orientation(h, [7, k]) for k in range(samples))
        floor = (h.n - h.r + 1) / h.r
        for d in ds:
            _, delta = max_directed_degree(d, h.r - 1)
            res.checked += 1
            if delta < floor:
                res.fail(f"H({h.n},{h.r}) ranks={d.ranks}: max degree {delta} < {floor}")
    return res


def suite_greedy_bound(budget: int = 100, n_values=range(2, 31),
                       r_values=(2, 3, 4)) -> SuiteResult:
    res = SuiteResult("greedy-bound")
    for r in r_values:
        for n in n_values:
            if n < r:
                continue
            h = complete_hypergraph(n, r)
            bound = upper_bound_thm2i(n, r)
            for k in range(budget):
                d = random_orientation(h, [11, n, r, k])
                for p in range(1, r):
                    cert = greedy_gpl(d, p)
                    res.checked += 1
                    if not check_certificate(d, cert, p):
                        res.fail(f"H({n},{r}) p={p} sample {k}: greedy set not dominating")
                    if not len(cert) < bound:
                        res.fail(f"H({n},{r}) p={p} sample {k}: |S|={len(cert)} >= {bound:.3f}")
    return res


def suite_oracle(budget: int = 200, n_max: int = 8, seed: int = 0) -> SuiteResult:
    """Branch and bound against the naive subset oracle on random instances."""
    res = SuiteResult("oracle")
    rng = np.random.default_rng(seed)
    for k in range(budget):
        r = int(rng.integers(2, 5))
        n = int(rng.integers(r, n_max + 1))
        m = int(rng.integers(0, comb(n, r) + 1))
        h = random_hypergraph(n, r, m, int(rng.integers(2**31)))
        d = random_orientation(h, int(rng.integers(2**31)))
        p = int(rng.integers(1, r))
        cert, stats = min_directed_dominating(d, p)
        want = naive_gamma(d, p)
        res.checked += 1
        if not stats.proven_optimal or len(cert) != want or not check_certificate(d, cert, p):
            res.fail(f"instance {k} (n={n}, r={r}, m={m}, p={p}): got {len(cert)}, oracle {want}")
    return res


ENUMERABLE = [(3, 2), (4, 2), (5, 2), (6, 2), (3, 3), (4, 3)]


def suite_eq1(n: int = 4, r: int = 3, cap: int = 10**8, threads: int = 1) -> SuiteResult:
    res = SuiteResult("eq1")
    report = verify_eq1_monotonicity(complete_hypergraph(n, r), cap=cap, threads=threads)
    res.checked = len(report.values)
    res.detail = {"values": report.values, "orientations": report.orientations_examined}
    if not report.holds:
        res.fail(f"H({n},{r}): values {report.values} not nondecreasing in p")
    return res


def suite_sandwich(instances=ENUMERABLE, threads: int = 1) -> SuiteResult:
    res = SuiteResult("sandwich")
    for n, r in instances:
        h = complete_hypergraph(n, r)
        exact = gamma_upper_exact_all(h, threads=threads)
        upper = upper_bound_thm2i(n, r)
        lower = certified_lower(n, r)
        for p, found in exact.items():
            res.checked += 1
            res.detail[f"H({n},{r}) p={p}"] = found.value
            if not found.value < upper:
                res.fail(f"H({n},{r}) p={p}: exact {found.value} >= upper {upper:.3f}")
            if p == r - 1 and lower is not None and lower > found.value:
                res.fail(f"H({n},{r}): certified lower {lower} > exact {found.value}")
    return res


def suite_first_moment(r_values=(2, 3, 4), t_max: int = 30, n_max: int = 1000,
                       n_step: int = 1) -> SuiteResult:
    """Exact-integer and floating-point first-moment decisions agree off ties."""
    res = SuiteResult("first-moment")
    for r in r_values:
        for t in range(r - 1, t_max + 1):
            for n in range(max(t, r), n_max + 1, n_step):
                log_e = first_moment_expectation_log(n, r, t)
                if abs(log_e) <= 1e-6:
                    continue
                res.checked += 1
                if first_moment_certifies(n, r, t) != (log_e < 0):
                    res.fail(f"n={n} r={r} t={t}: integer and float disagree (ln E={log_e})")
    return res


H43_COVERS = [
    [[0, 1, 2], [1, 2, 3]],
    [[0, 1, 2], [0, 1, 3]],
    [[0, 1], [2, 3]],
    [[0, 1, 2, 3]],
    [[0], [1], [2], [3]],
    [[0, 1, 2], [3]],
    [[0, 1, 3], [0, 2, 3], [1, 2, 3]],
]


def suite_cover(covers=H43_COVERS) -> SuiteResult:
    res = SuiteResult("cover")
    h = complete_hypergraph(4, 3)
    for p in (1, 2):
        exact = gamma_upper_exact(h, p).value
        for cover in covers:
            value = cover_bound(h, cover, p)
            res.checked += 1
            if value < exact:
                res.fail(f"p={p} cover {cover}: {value} < exact {exact}")
    return res


def random_complement_coloring(h: Hypergraph, rng) -> Coloring:
    """A random proper coloring of the complement: random vertex order,
    random valid class choice."""
    classes: list[list[int]] = []
    assignment = [0] * h.n
    for v in rng.permutation(h.n).tolist():
        ok = [i for i, cls in enumerate(classes)
              if len(cls) + 1 < h.r
              or all(h.has_edge(s + (v,)) for s in combinations(sorted(cls), h.r - 1))]
        if ok and rng.random() < 0.8:
            i = ok[int(rng.integers(len(ok)))]
        else:
            i = len(classes)
            classes.append([])
        classes[i].append(v)
        assignment[v] = i
    return Coloring(tuple(assignment))


def suite_jensen(budget: int = 1000, seed: int = 0) -> SuiteResult:
    res = SuiteResult("jensen")
    rng = np.random.default_rng(seed)
    for k in range(budget):
        r = int(rng.integers(2, 4))
        n = int(rng.integers(r, 10))
        m = int(rng.integers(0, comb(n, r) + 1))
        h = random_hypergraph(n, r, m, int(rng.integers(2**31)))
        coloring = random_complement_coloring(h, rng)
        sum_form, jensen_form = chi_bound_thm3(h, coloring, 1)
        res.checked += 1
        if sum_form > jensen_form * (1 + 1e-12):
            res.fail(f"instance {k}: sum {sum_form} > jensen {jensen_form}")
    return res


def suite_coloring(budget: int = 100, seed: int = 0) -> SuiteResult:
    res = SuiteResult("coloring")
    rng = np.random.default_rng(seed)
    for k in range(budget):
        r = int(rng.integers(2, 4))
        n = int(rng.integers(1, 10))
        m = int(rng.integers(0, comb(n, r) + 1))
        h = random_hypergraph(n, r, m, int(rng.integers(2**31)))
        hc = complement(h)
        chi = chromatic_number_exact(h)
        alpha = independence_number(h)
        greedy = greedy_complement_coloring(h)
        res.checked += 1
        if alpha * chi < n:
            res.fail(f"instance {k}: alpha={alpha} < n/chi with chi={chi}")
        if alpha != clique_number(hc):
            res.fail(f"instance {k}: alpha(H) != omega(complement)")
        if not is_proper(hc, greedy) or chromatic_number_exact(hc) > greedy.num_colors:
            res.fail(f"instance {k}: greedy complement coloring invalid")
    return res


SUITES = {
    "eq1": suite_eq1,
    "prefix-identity": suite_prefix_identity,
    "averaging": suite_averaging,
    "greedy-bound": suite_greedy_bound,
    "oracle": suite_oracle,
    "sandwich": suite_sandwich,
    "first-moment": suite_first_moment,
    "cover": suite_cover,
    "jensen": suite_jensen,
    "coloring": suite_coloring,
}

# keyword arguments forwarded from the CLI, by suite
SUITE_ARGS = {
    "eq1": ("n", "r", "cap", "threads"),
    "prefix-identity": ("budget",),
    "averaging": ("budget",),
    "greedy-bound": ("budget",),
    "oracle": ("budget", "seed"),
    "sandwich": ("threads",),
    "first-moment": (),
    "cover": (),
    "jensen": ("budget", "seed"),
    "coloring": ("budget", "seed"),
}

