from fractions import Fraction as F

import numpy as np
import pytest

from fixedparity.catalog import connected_catalog
from fixedparity.graphs import DisconnectedGraphError, MultiGraph
from fixedparity.orient import FAIL, PASS, STATISTICAL_PASS
from fixedparity.parity import even_sum_toss
from fixedparity.pmf import Pmf
from fixedparity.subgraph import (
    SubgraphSample,
    exact_odd_degree_pmf,
    odd_degree_count,
    sample_odd_degree_counts,
    sample_subgraph,
    subgraph_from_mask,
    verify_subgraph_dominance,
)
from oracles import odd_degree_law

C4 = MultiGraph(4, [(0, 1), (1, 2), (2, 3), (3, 0)])


def test_sample_invariant():
    rng = np.random.default_rng(0)
    for _ in range(50):
        s = sample_subgraph(C4, 0.4, rng)
        assert odd_degree_count(s) % 2 == 0
    with pytest.raises(AssertionError):
        SubgraphSample((1,), (1, 0))
    assert subgraph_from_mask(C4, (1, 1, 0, 0)).degrees == (1, 2, 1, 0)


@pytest.mark.parametrize("p", [F(1, 4), F(1, 2), F(4, 5)])
def test_exact_matches_brute_force(p):
    for e in connected_catalog(5)[::11]:
        G = e.graph
        assert exact_odd_degree_pmf(G, p) == Pmf(odd_degree_law(G.n, G.edges, p))


def test_dominance_and_fair_equality():
    rep = verify_subgraph_dominance(C4, F(3, 10))
    assert rep.verdict == PASS
    rep = verify_subgraph_dominance(C4, F(1, 2))
    assert rep.odd_pmf == even_sum_toss(4, F(1, 2))
    assert rep.report.equal
    # above one half the bound uses 1 - p
    rep = verify_subgraph_dominance(C4, F(7, 10))
    assert rep.bound_pmf == even_sum_toss(4, F(3, 10)) and rep.holds


def test_requires_connected():
    with pytest.raises(DisconnectedGraphError):
        verify_subgraph_dominance(MultiGraph(3, [(0, 1)]), F(1, 3))


def test_monte_carlo_mode():
    G = MultiGraph(5, [(i, (i + 1) % 5) for i in range(5)] * 5)
    rep = verify_subgraph_dominance(G, 0.3, cap=10, samples=20_000, rng=np.random.default_rng(1))
    assert rep.verdict == STATISTICAL_PASS and rep.mode == "statistical"
    values = sample_odd_degree_counts(G, 0.3, 1000, np.random.default_rng(2))
    assert (values % 2 == 0).all()
