"""Orientations with prescribed odd sets, counting by even in-degree, and the tree survey."""

from fixedparity import apps
from fixedparity.graphs import MultiGraph

G = MultiGraph(5, [(0, 1), (1, 2), (2, 3), (3, 4), (4, 0), (1, 3)])

o = apps.t_odd_orientation(G, {0, 2})
print("odd in-degree set:", sorted(apps.odd_set(G, o)))
print("impossible request:", apps.t_odd_orientation(G, {0}))

for t in range(G.n + 1):
    c = apps.count_orientations_with_even_count(G, t)
    print(f"t={t}: formula {c.formula_value}, census {c.census_value}, {c.verdict}")

report = apps.unimodality_survey("canonical-trees", 8)
print(f"{len(report.rows)} trees up to 8 vertices, non-unimodal cases: {len(report.counterexamples)}")
print("coverage n=8:", apps.labeled_tree_coverage(8))
