"""Keep each edge with probability p and count odd-degree vertices."""

from fractions import Fraction as F

from fixedparity import subgraph
from fixedparity.graphs import MultiGraph

G = MultiGraph(5, [(0, 1), (1, 2), (2, 3), (3, 4), (4, 0), (0, 2), (0, 2)])

for p in (F(1, 10), F(1, 4), F(1, 2), F(4, 5)):
    rep = subgraph.verify_subgraph_dominance(G, p)
    print(f"p={p}: odd-degree law {[str(m) for m in rep.odd_pmf.masses]} -> {rep.verdict}")
