import math
from itertools import combinations

import numpy as np
import pytest

import oracles
from hyperdom.coloring import (
    CapExceeded,
    Coloring,
    chromatic_number_exact,
    clique_number,
    greedy_complement_coloring,
    independence_number,
    is_proper,
    optimal_coloring,
)
from hyperdom.hypergraph import Hypergraph, complement, complete_hypergraph, edgeless, random_hypergraph


def random_instances(count, seed, max_n=8):
    rng = np.random.default_rng(seed)
    for _ in range(count):
        r = int(rng.integers(2, 4))
        n = int(rng.integers(1, max_n + 1))
        m = int(rng.integers(0, math.comb(n, r) + 1))
        yield random_hypergraph(n, r, m, int(rng.integers(2**31)))


def test_is_proper():
    h = Hypergraph.from_edges(3, 2, [(0, 1), (1, 2)])
    assert is_proper(h, Coloring((0, 1, 0)))
    assert not is_proper(h, (0, 0, 1))
    with pytest.raises(ValueError):
        is_proper(h, (0, 1))


@pytest.mark.parametrize("n,r,want", [
    (3, 2, 3), (4, 2, 4), (4, 3, 2), (5, 3, 3), (6, 3, 3), (5, 4, 2), (7, 4, 3),
])
def test_chromatic_complete(n, r, want):
    h = complete_hypergraph(n, r)
    assert chromatic_number_exact(h) == want == math.ceil(n / (r - 1))
    c = optimal_coloring(h)
    assert is_proper(h, c) and c.num_colors == want


def test_trivial_chromatic():
    assert chromatic_number_exact(edgeless(0, 2)) == 0
    assert chromatic_number_exact(edgeless(5, 3)) == 1


def test_cap():
    with pytest.raises(CapExceeded):
        chromatic_number_exact(edgeless(21, 2))
    with pytest.raises(CapExceeded):
        independence_number(edgeless(5, 2), cap=4)


def test_chromatic_matches_oracle():
    for h in random_instances(60, 1, max_n=7):
        assert chromatic_number_exact(h) == oracles.chromatic(h.edges, h.n)


def test_alpha_omega_match_oracle():
    for h in random_instances(80, 2):
        assert independence_number(h) == oracles.alpha(h.edges, h.n)
        assert clique_number(h) == oracles.omega(h.edges, h.n, h.r)


def test_alpha_chi_product():
    for h in random_instances(100, 3):
        assert independence_number(h) * chromatic_number_exact(h) >= h.n


def test_alpha_is_omega_of_complement():
    for h in random_instances(100, 4):
        assert independence_number(h) == clique_number(complement(h))


def test_greedy_complement_coloring():
    for h in random_instances(100, 5):
        c = greedy_complement_coloring(h)
        assert is_proper(complement(h), c)
        for cls in c.classes():
            assert len(cls) < h.r or all(h.has_edge(s) for s in combinations(cls, h.r))
        assert c.num_colors >= chromatic_number_exact(complement(h))


def test_greedy_on_complete_is_one_class():
    assert greedy_complement_coloring(complete_hypergraph(7, 3)).num_colors == 1


def test_json_roundtrip(validate):
    c = Coloring((1, 0, 1, 2))
    data = c.to_json()
    validate(data, "coloring.json")
    assert Coloring.from_json(data) == c
    assert c.classes() == [(1,), (0, 2), (3,)]
    with pytest.raises(ValueError):
        Coloring.from_json({"num_colors": 2, "assignment": [0, 1, 2]})
