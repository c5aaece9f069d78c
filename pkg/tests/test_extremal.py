import math
from itertools import combinations

import pytest

import oracles
from hyperdom.domination import min_directed_dominating
from hyperdom.extremal import (
    EnumerationRefused,
    SearchConfig,
    decode_index,
    encode_index,
    gamma_upper_exact,
    gamma_upper_exact_all,
    gamma_upper_search,
    orientation_count,
    verify_eq1_monotonicity,
)
from hyperdom.hypergraph import complete_hypergraph, edgeless, random_hypergraph
from hyperdom.orientation import random_orientation


def exact_gamma(d, p):
    cert, stats = min_directed_dominating(d, p)
    assert stats.proven_optimal
    return len(cert)


def test_h33_p2():
    res = gamma_upper_exact(complete_hypergraph(3, 3), 2)
    assert res.value == 2 == oracles.gamma_upper(((0, 1, 2),), 3, 2)
    assert res.orientations_examined == 6 and res.exact


def test_h32_p1_three_cycle():
    res = gamma_upper_exact(complete_hypergraph(3, 2), 1)
    assert res.value == 2 and res.orientations_examined == 8
    # the witness has no vertex beating both others
    assert exact_gamma(res.witness, 1) == 2
    assert res.value <= math.log2(3 + 1)


@pytest.mark.parametrize("k", [0, 1, 5])
def test_edgeless(k):
    res = gamma_upper_exact(edgeless(k, 3), 1)
    assert res.value == k and res.orientations_examined == 1


@pytest.mark.parametrize("n,r", [(3, 2), (4, 2), (5, 2), (3, 3), (4, 3)])
def test_exact_matches_oracle(n, r):
    edges = list(combinations(range(n), r))
    found = gamma_upper_exact_all(complete_hypergraph(n, r))
    for p, res in found.items():
        assert res.value == oracles.gamma_upper(edges, n, p)
        assert exact_gamma(res.witness, p) == res.value
        assert res.orientations_examined == math.factorial(r) ** len(edges)


@pytest.mark.parametrize("seed", range(12))
def test_exact_matches_oracle_on_random_hypergraphs(seed):
    h = random_hypergraph(5 + seed % 2, 3, 3 + seed % 3, seed)
    for p, res in gamma_upper_exact_all(h).items():
        assert res.value == oracles.gamma_upper(h.edges, h.n, p)
        assert exact_gamma(res.witness, p) == res.value


def test_python_fallback_matches_kernel(monkeypatch):
    from hyperdom import _kernel

    h = random_hypergraph(6, 3, 4, 1)
    want = {p: (r.value, r.witness) for p, r in gamma_upper_exact_all(h).items()}
    monkeypatch.setattr(_kernel, "MAX_KERNEL_VERTICES", 0)
    got = {p: (r.value, r.witness) for p, r in gamma_upper_exact_all(h).items()}
    assert got == want


def test_witness_is_smallest_counter_index():
    h = complete_hypergraph(4, 2)
    res = gamma_upper_exact(h, 1)
    idx = encode_index(res.witness)
    for k in range(idx):
        assert exact_gamma(decode_index(h, k), 1) < res.value


def test_threads_do_not_change_results():
    h = complete_hypergraph(6, 2)
    one = gamma_upper_exact(h, 1, threads=1)
    four = gamma_upper_exact(h, 1, threads=4)
    assert (one.value, one.witness) == (four.value, four.witness)


def test_fix_first_edge():
    h = complete_hypergraph(4, 3)
    full = gamma_upper_exact_all(h)
    fixed = gamma_upper_exact_all(h, fix_first_edge=True)
    for p in (1, 2):
        assert fixed[p].value == full[p].value
        assert fixed[p].orientations_examined == 6**3
    with pytest.raises(ValueError):
        gamma_upper_exact(random_hypergraph(5, 3, 4, 0), 1, fix_first_edge=True)


def test_cap_refusal():
    with pytest.raises(EnumerationRefused) as info:
        gamma_upper_exact(complete_hypergraph(6, 3), 2, cap=1000)
    assert info.value.required == 6**20 == orientation_count(complete_hypergraph(6, 3))


def test_monotonicity_h43():
    report = verify_eq1_monotonicity(complete_hypergraph(4, 3))
    assert report.holds and report.values == {1: 2, 2: 3}
    assert report.orientations_examined == 1296


def test_monotonicity_r2_vacuous():
    report = verify_eq1_monotonicity(complete_hypergraph(4, 2))
    assert report.holds and list(report.values) == [1]


def test_search_h32_finds_cycle():
    res = gamma_upper_search(complete_hypergraph(3, 2), 1, SearchConfig(restarts=8, max_steps=20))
    assert res.value == 2 and res.certified and not res.exact
    assert exact_gamma(res.witness, 1) == res.value


def test_search_below_exact_and_sound():
    h = complete_hypergraph(4, 3)
    cfg = SearchConfig(restarts=3, max_steps=30, seed=4)
    for p in (1, 2):
        res = gamma_upper_search(h, p, cfg)
        assert res.value <= gamma_upper_exact(h, p).value
        assert exact_gamma(res.witness, p) == res.value


def test_search_h72_within_exact():
    # exhaustive enumeration of all 2^21 tournaments gives 3
    h = complete_hypergraph(7, 2)
    assert gamma_upper_exact(h, 1).value == 3
    res = gamma_upper_search(h, 1, SearchConfig(restarts=10, max_steps=300, seed=1,
                                                plateau_limit=50))
    assert res.value in (2, 3)
    assert exact_gamma(res.witness, 1) == res.value


def test_search_determinism_and_trace():
    h = complete_hypergraph(6, 3)
    cfg = SearchConfig(restarts=3, max_steps=25, seed=9)
    a = gamma_upper_search(h, 2, cfg)
    b = gamma_upper_search(h, 2, cfg, threads=3)
    assert (a.value, a.witness, a.trace) == (b.value, b.witness, b.trace)
    assert len(a.trace) == 3 * 26
    assert {row[0] for row in a.trace} == {0, 1, 2}


def test_search_budget_fallback_is_flagged():
    h = complete_hypergraph(9, 3)
    res = gamma_upper_search(h, 2, SearchConfig(restarts=1, max_steps=3), budget=1)
    assert not res.certified


def test_search_config_validation():
    with pytest.raises(ValueError):
        SearchConfig(restarts=0)


def test_exact_values_below_greedy_upper():
    for n, r in [(3, 2), (4, 2), (5, 2), (6, 2), (3, 3), (4, 3)]:
        bound = r * (1 + math.log(n + (r - 1) ** 2))
        for res in gamma_upper_exact_all(complete_hypergraph(n, r)).values():
            assert res.value < bound


def test_single_orientation_random_witness_replays():
    h = complete_hypergraph(5, 2)
    d = random_orientation(h, 0)
    assert decode_index(h, encode_index(d)) == d


def test_search_h72_generous_config_reaches_three():
    # value-3 tournaments are rare, so the walk needs a long plateau budget
    cfg = SearchConfig(restarts=8, max_steps=2000, seed=0, plateau_limit=2000)
    res = gamma_upper_search(complete_hypergraph(7, 2), 1, cfg)
    assert res.value == 3 and res.certified
    assert exact_gamma(res.witness, 1) == 3
