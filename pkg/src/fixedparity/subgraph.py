"""Random edge-retention subgraphs and their odd-degree vertex count ``O_{n,p}(G)``.

Each edge is kept independently with probability ``p``.  Head/tail
designations play no role here.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

import numpy as np

from .graphs import DisconnectedGraphError, MultiGraph
from .orient import (
    DEFAULT_CAP,
    FAIL,
    PASS,
    STATISTICAL_PASS,
    EnumerationCapError,
    census_tables,
    empirical_pmf,
    weighted_pmf,
    wilson_ccdf_bands,
)
from .parity import even_sum_toss
from .pmf import DominanceReport, Pmf, ccdf, is_exact, stochastically_dominates


@dataclass(frozen=True)
class SubgraphSample:
    kept: tuple
    degrees: tuple

    def __post_init__(self):
        if odd_degree_count(self) % 2:
            raise AssertionError("odd number of odd-degree vertices")


def subgraph_from_mask(G: MultiGraph, kept) -> SubgraphSample:
    deg = [0] * G.n
    for (t, h), k in zip(G.edges, kept):
        if k:
            deg[t] += 1
            deg[h] += 1
    return SubgraphSample(tuple(int(k) for k in kept), tuple(deg))


def sample_subgraph(G: MultiGraph, p, rng: np.random.Generator) -> SubgraphSample:
    return subgraph_from_mask(G, rng.random(G.m) < p)


def odd_degree_count(s: SubgraphSample) -> int:
    return sum(d % 2 for d in s.degrees)


@lru_cache(maxsize=4096)
def _subgraph_table(G: MultiGraph, cap: int) -> np.ndarray:
    (table,) = census_tables(G, "subgraph", cap, 1)
    return table


def subgraph_census(G: MultiGraph, cap: int = DEFAULT_CAP, jobs: int = 1) -> np.ndarray:
    """``table[s, k]``: number of ``k``-edge subgraphs with ``s`` odd-degree vertices."""
    if jobs > 1:
        (table,) = census_tables(G, "subgraph", cap, jobs)
        return table
    return _subgraph_table(G, cap)


def exact_odd_degree_pmf(G: MultiGraph, p, cap: int = DEFAULT_CAP, jobs: int = 1) -> Pmf:
    if not G.is_connected():
        raise DisconnectedGraphError("odd-degree law is defined here for connected graphs")
    if G.m > cap:
        raise EnumerationCapError(G.m, cap)
    return weighted_pmf(subgraph_census(G, cap, jobs), p)


def sample_odd_degree_counts(G: MultiGraph, p, samples: int, rng: np.random.Generator) -> np.ndarray:
    out = []
    left = samples
    while left > 0:
        size = min(left, 100_000)
        kept = (rng.random((size, G.m)) < float(p)).astype(np.int16)
        deg = np.zeros((size, G.n), dtype=np.int16)
        for i, (t, h) in enumerate(G.edges):
            deg[:, t] += kept[:, i]
            deg[:, h] += kept[:, i]
        out.append((deg % 2).sum(axis=1))
        left -= size
    return np.concatenate(out)


@dataclass(frozen=True)
class SubgraphDominance:
    odd_pmf: Pmf
    bound_pmf: Pmf
    report: DominanceReport | None
    mode: str
    verdict: str
    bands: tuple = ()

    @property
    def holds(self) -> bool:
        return self.verdict in (PASS, STATISTICAL_PASS)

    def to_dict(self) -> dict:
        out = {
            "mode": self.mode,
            "verdict": self.verdict,
            "odd_pmf": self.odd_pmf.to_dict(),
            "bound_pmf": self.bound_pmf.to_dict(),
        }
        if self.report is not None:
            out["dominance"] = self.report.to_dict()
        if self.bands:
            out["ccdf_bands"] = [list(b) for b in self.bands]
        return out


def verify_subgraph_dominance(
    G: MultiGraph,
    p,
    cap: int = DEFAULT_CAP,
    samples: int = 100_000,
    rng: np.random.Generator | None = None,
    tol: float | None = None,
    confidence: float = 0.999,
) -> SubgraphDominance:
    """``O_{n,p}(G)`` against ``A(n, min(p, 1-p))``."""
    if not G.is_connected():
        raise DisconnectedGraphError("graph must be connected")
    one = Fraction(1) if is_exact([p]) else 1.0
    small = p if p <= one / 2 else one - p
    bound = even_sum_toss(G.n, small)
    if G.m <= cap:
        odd = exact_odd_degree_pmf(G, p, cap)
        rep = stochastically_dominates(odd, bound, tol)
        return SubgraphDominance(odd, bound, rep, "exact", PASS if rep.dominates else FAIL)
    rng = np.random.default_rng(0) if rng is None else rng
    values = sample_odd_degree_counts(G, p, samples, rng)
    bands = wilson_ccdf_bands(values, G.n, confidence)
    tol = 1e-12 if tol is None else tol
    ok = all(hi >= float(ccdf(bound, t)) - tol for t, (_, _, hi) in enumerate(bands))
    return SubgraphDominance(
        empirical_pmf(values, G.n),
        bound,
        None,
        "statistical",
        STATISTICAL_PASS if ok else FAIL,
        tuple(bands),
    )
