"""Random orientations of a multigraph: even in-degree count, sources, and the fixed-parity sandwich."""

from fractions import Fraction as F

import numpy as np

from fixedparity import orient
from fixedparity.graphs import MultiGraph

# a triangle with a doubled edge and a pendant vertex
G = MultiGraph(4, [(0, 1), (1, 2), (2, 0), (0, 1), (2, 3)])
p = F(1, 3)

dist = orient.exact_orientation_distributions(G, p)
print("law of E_G:", [str(m) for m in dist.even.masses])
print("law of Z_G:", [str(m) for m in dist.zero.masses])

rep = orient.dominance_bounds_check(G, p)
print("sandwich verdict:", rep.verdict)
print("lower bound:", [str(m) for m in rep.lower_pmf.masses])
print("upper bound:", [str(m) for m in rep.upper_pmf.masses])

# fair orientations give the closed form exactly
print("p = 1/2 matches C(n,k)/2^(n-1):", orient.exact_orientation_distributions(G, F(1, 2)).even == orient.fair_even_law(G))

rng = np.random.default_rng(3)
stats = orient.sample_orientation_statistics(G, 1 / 3, 50_000, rng)
print("Monte Carlo E_G:", np.bincount(stats.even, minlength=G.n + 1) / stats.samples)
