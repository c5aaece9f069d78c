"""Acceptance criteria, one test each. Every test prints a single
``PASS``/``FAIL`` line (visible with ``pytest -s`` or in ``-v`` runs via the
terminal) before asserting.

Run just this module with ``pytest tests/test_acceptance.py -v -s``.
"""

import json
import math
import random
import time
from collections import Counter
from itertools import combinations

import numpy as np
import pytest

import oracles
from hyperdom.bounds import (
    certified_lower,
    chi_bound_thm3,
    cover_bound,
    first_moment_certificate,
    first_moment_certifies,
    first_moment_expectation_log,
    upper_bound_thm2i,
)
from hyperdom.cli import main
from hyperdom.coloring import Coloring
from hyperdom.domination import check_certificate, greedy_gpl, min_directed_dominating
from hyperdom.extremal import tournament_domination_bound, gamma_upper_exact, gamma_upper_exact_all
from hyperdom.hypergraph import complete_hypergraph, random_hypergraph
from hyperdom.orientation import (
    directed_degree,
    max_directed_degree,
    prefix_degrees,
    random_orientation,
)
from hyperdom.verify import H43_COVERS, all_orientations, random_complement_coloring


@pytest.fixture
def report(capsys):
    def emit(criterion, ok, detail):
        with capsys.disabled():
            print(f"\n{'PASS' if ok else 'FAIL'} criterion {criterion}: {detail}")
        return ok

    return emit


@pytest.fixture(scope="module")
def h53_values():
    t0 = time.perf_counter()
    found = gamma_upper_exact_all(complete_hypergraph(5, 3))
    return found, time.perf_counter() - t0


def test_c01_tournaments(report):
    t0 = time.perf_counter()
    values = {n: gamma_upper_exact(complete_hypergraph(n, 2), 1) for n in (3, 4, 5)}
    elapsed = time.perf_counter() - t0
    ok = all(res.value == 2 for res in values.values())
    ok &= all(res.value <= tournament_domination_bound(n) for n, res in values.items())
    ok &= all(res.orientations_examined == 2 ** math.comb(n, 2) for n, res in values.items())
    ok &= elapsed < 10
    detail = ", ".join(f"n={n}: {res.value}" for n, res in values.items())
    assert report(1, ok, f"{detail} in {elapsed:.2f}s")


@pytest.mark.slow
def test_c02_monotonicity(report, h53_values):
    t0 = time.perf_counter()
    h43 = gamma_upper_exact_all(complete_hypergraph(4, 3))
    elapsed = time.perf_counter() - t0
    h53, elapsed53 = h53_values
    ok = h43[1].orientations_examined == 6**4 and h43[1].value <= h43[2].value
    ok &= (h43[1].value, h43[2].value) == (2, 3) and elapsed < 5
    ok &= h53[1].orientations_examined == 6**10 and h53[1].value <= h53[2].value
    ok &= elapsed53 < 1800
    assert report(2, ok, f"H(4,3): {h43[1].value} <= {h43[2].value} in {elapsed:.2f}s; "
                         f"H(5,3): {h53[1].value} <= {h53[2].value} in {elapsed53:.1f}s")


def test_c03_prefix_identity(report):
    violations = checked = 0
    for n, r in [(4, 3), (5, 2)]:
        h = complete_hypergraph(n, r)
        for d in all_orientations(h):
            for p in range(1, r):
                checked += 1
                total = sum(directed_degree(d, a) for a in combinations(range(n), p))
                violations += total != h.m
    rng = np.random.default_rng(2024)
    for k in range(10_000):
        r = int(rng.integers(2, 5))
        n = int(rng.integers(r, 11))
        h = random_hypergraph(n, r, int(rng.integers(0, math.comb(n, r) + 1)),
                              int(rng.integers(2**31)))
        d = random_orientation(h, [2024, k])
        for p in range(1, r):
            checked += 1
            deg = prefix_degrees(d, p)
            total = sum(deg.get(sum(1 << v for v in a), 0) for a in combinations(range(n), p))
            violations += total != h.m
    assert report(3, violations == 0, f"{checked} checks, {violations} violations")


def test_c04_averaging(report):
    violations = checked = 0
    cases = [(complete_hypergraph(4, 3), None), (complete_hypergraph(5, 2), None),
             (complete_hypergraph(8, 3), 1000)]
    for h, samples in cases:
        floor = (h.n - h.r + 1) / h.r
        ds = all_orientations(h) if samples is None else (
            random_orientation(h, [4, k]) for k in range(samples))
        for d in ds:
            checked += 1
            _, delta = max_directed_degree(d, h.r - 1)
            # cross-check against a count over the raw orders
            raw = Counter(frozenset(o[: h.r - 1]) for o in d.orders)
            violations += delta != max(raw.values()) or delta < floor
    assert report(4, violations == 0, f"{checked} orientations, {violations} violations")


def test_c05_greedy(report):
    t0 = time.perf_counter()
    violations = checked = 0
    for r in (2, 3, 4):
        bound_by_n = {n: upper_bound_thm2i(n, r) for n in range(r, 31)}
        for n, bound in bound_by_n.items():
            h = complete_hypergraph(n, r)
            for k in range(100):
                d = random_orientation(h, [5, n, r, k])
                for p in range(1, r):
                    cert = greedy_gpl(d, p)
                    checked += 1
                    violations += not check_certificate(d, cert, p) or not len(cert) < bound
    elapsed = time.perf_counter() - t0
    ok = violations == 0 and elapsed < 60
    assert report(5, ok, f"{checked} runs, {violations} violations in {elapsed:.1f}s")


def test_c06_first_moment(report):
    t0 = time.perf_counter()
    cert = first_moment_certificate(21, 2, 2)
    ok = cert.lhs == 210 * 3**19 and cert.rhs == 2**38 and cert.holds and cert.verify()
    ok &= certified_lower(21, 2) >= 3
    ok &= not first_moment_certifies(20, 2, 2)
    ok &= abs(math.exp(first_moment_expectation_log(20, 2, 2)) - 1.072) < 1e-3
    checked = disagreements = 0
    for r in (2, 3, 4):
        for t in range(r - 1, 31):
            for n in range(max(t, r), 1001):
                log_e = first_moment_expectation_log(n, r, t)
                if abs(log_e) <= 1e-6:
                    continue
                checked += 1
                disagreements += first_moment_certifies(n, r, t) != (log_e < 0)
    elapsed = time.perf_counter() - t0
    ok &= disagreements == 0 and elapsed < 60
    assert report(6, ok, f"H(21,2) >= 3 certified; {checked} grid points, "
                         f"{disagreements} disagreements in {elapsed:.1f}s")


@pytest.mark.slow
def test_c07_sandwich(report, h53_values):
    instances = {(n, r): gamma_upper_exact_all(complete_hypergraph(n, r))
                 for n, r in [(3, 2), (4, 2), (5, 2), (6, 2), (7, 2), (3, 3), (4, 3)]}
    instances[(5, 3)] = h53_values[0]
    violations = checked = 0
    for (n, r), found in instances.items():
        upper = upper_bound_thm2i(n, r)
        lower = certified_lower(n, r)
        for p, res in found.items():
            checked += 1
            violations += not res.value < upper
            if p == r - 1 and lower is not None:
                violations += lower > res.value
    assert report(7, violations == 0, f"{checked} exact values, {violations} violations")


def test_c08_cover_and_coloring(report):
    h43 = complete_hypergraph(4, 3)
    cover_checks = cover_bad = 0
    for p in (1, 2):
        exact = gamma_upper_exact(h43, p).value
        for cover in H43_COVERS:
            cover_checks += 1
            cover_bad += cover_bound(h43, cover, p) < exact
    rel_err = 0.0
    for r in (2, 3, 4, 5):
        for n in range(r, 40):
            if math.comb(n, r) > 50_000:
                break
            sum_form, _ = chi_bound_thm3(complete_hypergraph(n, r), Coloring((0,) * n), 1)
            want = upper_bound_thm2i(n, r)
            rel_err = max(rel_err, abs(sum_form - want) / want)
    rng = np.random.default_rng(8)
    jensen_bad = 0
    for _ in range(1000):
        r = int(rng.integers(2, 4))
        n = int(rng.integers(r, 10))
        h = random_hypergraph(n, r, int(rng.integers(0, math.comb(n, r) + 1)),
                              int(rng.integers(2**31)))
        s, j = chi_bound_thm3(h, random_complement_coloring(h, rng), 1)
        jensen_bad += s > j * (1 + 1e-12)
    ok = len(H43_COVERS) >= 5 and cover_bad == 0 and rel_err <= 1e-12 and jensen_bad == 0
    assert report(8, ok, f"{cover_checks} cover checks ({cover_bad} bad), max rel err "
                         f"{rel_err:.1e}, {jensen_bad}/1000 sum > jensen")


def test_c09_oracle_equivalence(report):
    rng = random.Random(9)
    mismatches = 0
    for k in range(200):
        r = rng.randint(2, 4)
        n = rng.randint(r, 8)
        h = random_hypergraph(n, r, rng.randint(0, math.comb(n, r)), rng.randrange(2**31))
        d = random_orientation(h, rng.randrange(2**31))
        p = rng.randint(1, r - 1)
        cert, stats = min_directed_dominating(d, p)
        want = oracles.gamma(d.orders, n, p)
        mismatches += not stats.proven_optimal or len(cert) != want
    assert report(9, mismatches == 0, f"200 instances, {mismatches} mismatches")


def _strip_timing(text):
    try:
        obj = json.loads(text)
    except json.JSONDecodeError:
        return text
    obj.pop("elapsed_ms", None)
    return json.dumps(obj, sort_keys=True)


def test_c10_determinism(report, tmp_path):
    hp = tmp_path / "h.txt"
    main(["gen", "random", "-n", "6", "-r", "3", "-m", "8", "--seed", "3", "-o", str(hp)])
    h7 = tmp_path / "h7.txt"
    main(["gen", "complete", "-n", "7", "-r", "2", "-o", str(h7)])
    commands = [
        ["gen", "random", "-n", "12", "-r", "3", "-m", "30", "--seed", "7"],
        ["orient", str(hp), "--seed", "7"],
        ["solve", str(hp), "--random", "7", "-p", "2"],
        ["solve", str(hp), "--random", "7", "-p", "1", "--greedy"],
        ["gamma-upper", str(hp), "-p", "1"],
        ["gamma-upper", str(h7), "-p", "1", "--search", "--restarts", "4",
         "--max-steps", "40", "--seed", "7", "--witness-out", "{dir}/w.txt",
         "--trace-out", "{dir}/t.csv"],
        ["bounds", "-r", "3", "--n-min", "3", "--n-max", "60"],
        ["bounds", "-r", "2", "--n-min", "2", "--n-max", "60", "--format", "json"],
        ["explore", "r3-p1-growth", "--n-max", "5", "--restarts", "2", "--max-steps", "10"],
        ["verify", "cover", "-o", "{dir}/report.json"],
    ]
    differing = []
    for cmd in commands:
        outputs = []
        for threads in (1, 4):
            run_dir = tmp_path / f"run{threads}"
            run_dir.mkdir(exist_ok=True)
            argv = [a.format(dir=run_dir) for a in cmd]
            out = run_dir / "stdout"
            if cmd[0] != "verify":
                argv += ["-o", str(out)]
            main(argv + ["--threads", str(threads)])
            files = sorted(p for p in run_dir.iterdir())
            outputs.append({p.name: _strip_timing(p.read_text()) for p in files})
            for p in files:
                p.unlink()
        if outputs[0] != outputs[1]:
            differing.append(cmd[0])
    ok = not differing
    assert report(10, ok, f"{len(commands)} commands compared across --threads 1/4"
                          + (f"; differing: {differing}" if differing else ""))
