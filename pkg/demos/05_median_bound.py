"""Colored coins: each vertex owns one edge, so m = n, and the colors seen are the positive in-degree vertices."""

from fractions import Fraction as F

from fixedparity import orient
from fixedparity.graphs import MultiGraph

cycle = MultiGraph(6, [(i, (i + 1) % 6) for i in range(6)])
for p in (F(1, 10), F(3, 10), F(1, 2)):
    rep = orient.median_bound_report(cycle, p)
    print(f"p={p}: median X in {rep.positive_interval}, bound {float(rep.bound):.3f}, "
          f"connected bound {float(rep.connected_bound):.3f}, {rep.verdict}")

# two disjoint triangles: the general bound applies, the connected one does not
pair = MultiGraph(6, [(0, 1), (1, 2), (2, 0), (3, 4), (4, 5), (5, 3)])
rep = orient.median_bound_report(pair, F(1, 4))
print("two triangles:", rep.positive_interval, float(rep.bound), rep.connected_bound)
