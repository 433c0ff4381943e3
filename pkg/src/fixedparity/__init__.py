"""Fixed-parity Bernoulli sums and randomly oriented multigraphs.

Exact (rational) and float backends share one code path; every theorem-style
check has a brute-force enumeration oracle behind it.
"""

from .graphs import MultiGraph, parse_graph, read_graph
from .parity import (
    BiasSet,
    WeightVector,
    conditional_binomial,
    conditional_parity_pmf,
    even_sum_toss,
    fixed_parity_toss_pmf,
    odd_sum_toss,
    parity_split,
    poisson_binomial,
)
from .pmf import Pmf, ccdf, convolve, median_interval, mix, stochastically_dominates

__all__ = [
    "BiasSet",
    "MultiGraph",
    "Pmf",
    "WeightVector",
    "ccdf",
    "conditional_binomial",
    "conditional_parity_pmf",
    "convolve",
    "even_sum_toss",
    "fixed_parity_toss_pmf",
    "median_interval",
    "mix",
    "odd_sum_toss",
    "parity_split",
    "parse_graph",
    "poisson_binomial",
    "read_graph",
    "stochastically_dominates",
]
