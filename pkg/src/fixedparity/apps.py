"""Orientations with a prescribed odd set, orientation counts, and unimodality surveys."""

from __future__ import annotations

import csv
import io
import itertools
import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Iterator, NamedTuple

import networkx as nx
import numpy as np

from .graphs import (
    DisconnectedGraphError,
    MultiGraph,
    good_labeling,
    spanning_tree_containing,
)
from .orient import (
    DEFAULT_CAP,
    Orientation,
    exact_orientation_distributions,
    in_degrees,
    orientation_census,
)
from .pmf import Pmf, is_exact, is_unimodal, is_unimodal_sequence


class CapExceededError(ValueError):
    pass


# T-odd orientations -------------------------------------------------------------


def odd_set(G: MultiGraph, o: Orientation) -> frozenset:
    return frozenset(v for v, d in enumerate(in_degrees(G, o)) if d % 2)


def t_odd_orientation(G: MultiGraph, T: Iterable[int]) -> Orientation | None:
    """An orientation whose odd in-degree vertices are exactly ``T``, or ``None``.

    ``None`` is returned exactly when ``|T| + m`` is odd.  Otherwise
    non-tree edges point into their heads, and tree edges are fixed along a
    good labeling: when ``e_i`` is reached it is the last free edge at
    ``v_i``, so it can set the parity of ``v_i``.  The parity of ``v_n``
    then follows from the in-degree sum.
    """
    T = frozenset(T)
    if any(not 0 <= v < G.n for v in T):
        raise ValueError("T contains a vertex outside the graph")
    if not G.is_connected():
        raise DisconnectedGraphError("graph must be connected")
    if (len(T) + G.m) % 2:
        return None
    if G.n == 1:
        return Orientation(())
    tree = spanning_tree_containing(G, 0)
    lab = good_labeling(G, tree[-1], tree)
    bits = [0] * G.m
    deg = [0] * G.n
    in_tree = set(tree)
    for i, (_, h) in enumerate(G.edges):
        if i not in in_tree:
            deg[h] += 1
    for v, e in zip(lab.vertices, lab.edges):
        t, h = G.edges[e]
        want_odd = v in T
        # point e into v exactly when v's parity still needs fixing
        into_v = (deg[v] % 2 == 1) != want_odd
        into_tail = into_v == (t == v)
        bits[e] = int(into_tail)
        deg[t if into_tail else h] += 1
    o = Orientation(tuple(bits))
    assert odd_set(G, o) == T
    return o


class EnumerationCount(NamedTuple):
    formula_value: int
    census_value: int | None
    verified: bool

    @property
    def verdict(self) -> str:
        if self.census_value is None:
            return "unverified"
        return "pass" if self.verified else "fail"


def orientation_count_formula(n: int, m: int, t: int) -> int:
    """``2^(m-n+1) * C(n, t)`` when ``t`` has the parity of ``m - n``, else 0."""
    if (t - (m - n)) % 2 or not 0 <= t <= n:
        return 0
    return 2 ** (m - n + 1) * math.comb(n, t)


def count_orientations_with_even_count(
    G: MultiGraph, t: int, cap: int = DEFAULT_CAP
) -> EnumerationCount:
    """Formula value vs. brute-force count of orientations with ``t`` even in-degree vertices."""
    if not G.is_connected():
        raise DisconnectedGraphError("graph must be connected")
    formula = orientation_count_formula(G.n, G.m, t)
    if G.m > cap:
        return EnumerationCount(formula, None, False)
    counts = orientation_census(G, cap).even_counts()
    census = counts[t] if 0 <= t < len(counts) else 0
    return EnumerationCount(formula, census, formula == census)


@dataclass(frozen=True)
class LabeledCensus:
    """Labeled simple graphs on ``n`` vertices bucketed by edge count and odd-degree count."""

    n: int
    counts: dict  # counts[m][t]

    def totals(self) -> dict:
        out: dict = {}
        for row in self.counts.values():
            for t, c in row.items():
                out[t] = out.get(t, 0) + c
        return out

    def per_edge_count_rows(self) -> list[dict]:
        rows = []
        for m in sorted(self.counts):
            for t in range(0, self.n + 1, 2):
                c = self.counts[m].get(t, 0)
                f = _power_binomial(self.n, m, t)
                rows.append({"m": m, "t": t, "count": c, "formula": f, "match": None if f is None else c == f})
        return rows

    def aggregate_rows(self) -> list[dict]:
        """Totals over all edge counts next to two readings of ``2^(m-n+1) C(n,t)``.

        ``formula_sum`` sums it over every edge count ``m >= n-1``;
        ``formula_complete`` plugs in ``m = C(n, 2)``.  Neither is asserted.
        """
        full = math.comb(self.n, 2)
        totals = self.totals()
        rows = []
        for t in range(0, self.n + 1, 2):
            fsum = sum(_power_binomial(self.n, m, t) for m in range(self.n - 1, full + 1))
            fcomplete = _power_binomial(self.n, full, t)
            count = totals.get(t, 0)
            rows.append(
                {
                    "t": t,
                    "count": count,
                    "formula_sum": fsum,
                    "matches_sum": count == fsum,
                    "formula_complete": fcomplete,
                    "matches_complete": count == fcomplete,
                }
            )
        return rows


def _power_binomial(n: int, m: int, t: int) -> int | None:
    """``2^(m-n+1) * C(n, t)``, or ``None`` when ``m < n-1`` makes it fractional."""
    if m < n - 1:
        return None
    return 2 ** (m - n + 1) * math.comb(n, t)


def labeled_graph_odd_degree_census(n: int, t: int | None = None, n_max: int = 6) -> LabeledCensus:
    """Count all ``2^C(n,2)`` labeled graphs by edge count and odd-degree count.

    With ``t`` given, only that odd-degree count is kept in the table.
    """
    if n < 1:
        raise ValueError("n must be positive")
    if n > n_max:
        raise CapExceededError(f"n={n} exceeds the labeled-census cap {n_max}")
    pairs = list(itertools.combinations(range(n), 2))
    k = len(pairs)
    counts: dict = {}
    if k == 0:
        counts = {0: {0: 1}}
    else:
        idx = np.arange(1 << k, dtype=np.int64)
        bits = ((idx[:, None] >> np.arange(k)) & 1).astype(np.int16)
        deg = np.zeros((len(idx), n), dtype=np.int16)
        for i, (a, b) in enumerate(pairs):
            deg[:, a] += bits[:, i]
            deg[:, b] += bits[:, i]
        odd = (deg % 2).sum(axis=1)
        edges = bits.sum(axis=1)
        table = np.bincount(edges * (n + 1) + odd, minlength=(k + 1) * (n + 1)).reshape(k + 1, n + 1)
        for m in range(k + 1):
            counts[m] = {s: int(table[m, s]) for s in range(n + 1) if table[m, s]}
    if t is not None:
        counts = {m: {t: row[t]} for m, row in counts.items() if t in row}
    return LabeledCensus(n, counts)


# Zero in-degree and independent sets -----------------------------------------------


def independent_sets(G: MultiGraph) -> Iterator[int]:
    """Bitmasks of all independent vertex sets (parallel edges count once)."""
    adj = [0] * G.n
    for t, h in G.edges:
        adj[t] |= 1 << h
        adj[h] |= 1 << t
    for mask in range(1 << G.n):
        ok = True
        rest = mask
        while rest:
            v = (rest & -rest).bit_length() - 1
            if adj[v] & mask:
                ok = False
                break
            rest &= rest - 1
        if ok:
            yield mask


def independent_set_sequence(G: MultiGraph) -> list[int]:
    """``alpha_j``: number of independent sets of size ``j``, up to the independence number."""
    seq = [0] * (G.n + 1)
    for mask in independent_sets(G):
        seq[bin(mask).count("1")] += 1
    while seq[-1] == 0:
        seq.pop()
    return seq


def zero_indegree_pmf(G: MultiGraph, p) -> Pmf:
    """Law of ``Z_G`` by inclusion-exclusion over independent sets.

    For an independent set ``S``, ``P[every vertex of S has in-degree 0]``
    is the product over edges touching ``S`` of the chance they point away
    from ``S``.  Summing over ``|S| = j`` gives ``E[C(Z_G, j)]``, and
    binomial inversion recovers the pmf.  This never enumerates
    orientations, so it serves as an independent check on the census.
    """
    one = Fraction(1) if is_exact([p]) else 1.0
    away_from_tail = one - p  # edge points into its head
    away_from_head = p
    moments = [one * 0] * (G.n + 1)
    for mask in independent_sets(G):
        prob = one
        for t, h in G.edges:
            if (mask >> t) & 1:
                prob *= away_from_tail
            elif (mask >> h) & 1:
                prob *= away_from_head
        moments[bin(mask).count("1")] += prob
    masses = []
    for k in range(G.n + 1):
        total = one * 0
        for j in range(k, G.n + 1):
            term = math.comb(j, k) * moments[j]
            total += term if (j - k) % 2 == 0 else -term
        masses.append(total)
    if not is_exact([p]):
        masses = [max(m, 0.0) for m in masses]
    return Pmf(masses)


# Graph families -------------------------------------------------------------------------


def prufer_decode(seq: Iterable[int], n: int) -> list[tuple[int, int]]:
    """Edges of the labeled tree on ``0..n-1`` with Prufer sequence ``seq``."""
    seq = list(seq)
    degree = [1] * n
    for x in seq:
        degree[x] += 1
    edges = []
    for x in seq:
        leaf = min(v for v in range(n) if degree[v] == 1)
        edges.append((leaf, x))
        degree[leaf] -= 1
        degree[x] -= 1
    u, w = [v for v in range(n) if degree[v] == 1]
    edges.append((u, w))
    return edges


def labeled_trees(n: int) -> Iterator[MultiGraph]:
    """All ``n^(n-2)`` labeled trees, each edge's tail the smaller label."""
    if n == 1:
        yield MultiGraph(1, [])
        return
    for seq in itertools.product(range(n), repeat=n - 2):
        yield MultiGraph(n, [tuple(sorted(e)) for e in prufer_decode(seq, n)])


def unlabeled_trees(n: int) -> Iterator[MultiGraph]:
    """One tree per isomorphism class, each edge's tail the smaller label."""
    if n == 1:
        yield MultiGraph(1, [])
        return
    for T in nx.nonisomorphic_trees(n):
        yield MultiGraph(n, sorted(tuple(sorted(e)) for e in T.edges()))


def connected_simple_graphs(n: int) -> Iterator[MultiGraph]:
    """Connected simple graphs on ``n <= 7`` vertices from the networkx atlas."""
    if n > 7:
        raise CapExceededError("the graph atlas stops at 7 vertices")
    for g in nx.graph_atlas_g():
        if g.number_of_nodes() == n and nx.is_connected(g):
            yield MultiGraph(n, sorted(tuple(sorted(e)) for e in g.edges()))


def tree_automorphism_count(G: MultiGraph) -> int:
    """Size of the automorphism group of a tree, by canonical rooted encodings."""
    if G.n == 1:
        return 1
    T = nx.Graph(list(G.edges))
    T.add_nodes_from(range(G.n))
    if T.number_of_edges() != G.n - 1 or not nx.is_connected(T):
        raise ValueError("graph is not a tree")

    def rooted(v: int, parent: int | None) -> tuple[str, int]:
        kids = [rooted(w, v) for w in T[v] if w != parent]
        kids.sort()
        count = 1
        for code, grp in itertools.groupby(kids, key=lambda c: c[0]):
            grp = list(grp)
            count *= math.factorial(len(grp)) * grp[0][1] ** len(grp)
        return "(" + "".join(c for c, _ in kids) + ")", count

    centers = nx.center(T)
    if len(centers) == 1:
        return rooted(centers[0], None)[1]
    a, b = centers
    ca, na = rooted(a, b)
    cb, nb = rooted(b, a)
    return na * nb * (2 if ca == cb else 1)


def labeled_tree_coverage(n: int) -> tuple[int, int]:
    """``(sum of n!/|Aut| over unlabeled trees, n^(n-2))``; equal iff every labeled tree is covered once."""
    total = sum(math.factorial(n) // tree_automorphism_count(T) for T in unlabeled_trees(n))
    return total, n ** (n - 2) if n >= 2 else 1


FAMILIES = {
    "trees": labeled_trees,
    "canonical-trees": unlabeled_trees,
    "connected": connected_simple_graphs,
}


@dataclass(frozen=True)
class SurveyRow:
    graph_id: str
    graph: MultiGraph
    z_pmf: Pmf
    z_unimodal: bool
    alpha: tuple
    alpha_unimodal: bool

    def to_dict(self) -> dict:
        return {
            "id": self.graph_id,
            "n": self.graph.n,
            "edges": [[t + 1, h + 1] for t, h in self.graph.edges],
            "z_pmf": self.z_pmf.to_dict(),
            "z_unimodal": self.z_unimodal,
            "alpha": list(self.alpha),
            "alpha_unimodal": self.alpha_unimodal,
        }


@dataclass
class SurveyReport:
    family: str
    n_max: int
    p: object
    rows: list = field(default_factory=list)
    complete: bool = True

    @property
    def counterexamples(self) -> list[SurveyRow]:
        return [r for r in self.rows if not (r.z_unimodal and r.alpha_unimodal)]

    def to_dict(self) -> dict:
        return {
            "family": self.family,
            "n_max": self.n_max,
            "p": str(self.p),
            "graphs": len(self.rows),
            "complete": self.complete,
            "counterexamples": [r.to_dict() for r in self.counterexamples],
        }

    def to_csv(self) -> str:
        buf = io.StringIO()
        writer = csv.writer(buf, lineterminator="\n")
        writer.writerow(["id", "n", "edges", "z_offset", "z_masses", "z_unimodal", "alpha", "alpha_unimodal"])
        for r in self.rows:
            d = r.z_pmf.to_dict()
            writer.writerow(
                [
                    r.graph_id,
                    r.graph.n,
                    " ".join(f"{t + 1}-{h + 1}" for t, h in r.graph.edges),
                    d["offset"],
                    " ".join(str(m) for m in d["masses"]),
                    r.z_unimodal,
                    " ".join(str(a) for a in r.alpha),
                    r.alpha_unimodal,
                ]
            )
        return buf.getvalue()


def unimodality_survey(
    family: str = "canonical-trees",
    n_max: int = 10,
    p=Fraction(1, 2),
    n_min: int = 2,
    budget: int | None = None,
) -> SurveyReport:
    """Exact ``Z_G`` law and independent-set sequence for every graph in a family.

    Never asserts either conjecture; non-unimodal cases are reported as rows.
    ``budget`` caps the number of graphs examined; hitting it marks the
    report incomplete.
    """
    if family not in FAMILIES:
        raise ValueError(f"unknown family {family!r}; choose from {sorted(FAMILIES)}")
    report = SurveyReport(family, n_max, p)
    for n in range(n_min, n_max + 1):
        for i, G in enumerate(FAMILIES[family](n)):
            if budget is not None and len(report.rows) >= budget:
                report.complete = False
                return report
            z = zero_indegree_pmf(G, p)
            alpha = tuple(independent_set_sequence(G))
            report.rows.append(
                SurveyRow(f"{family}-n{n}-{i}", G, z, is_unimodal(z), alpha, is_unimodal_sequence(alpha))
            )
    return report


def zero_indegree_pmf_by_enumeration(G: MultiGraph, p, cap: int = DEFAULT_CAP) -> Pmf:
    return exact_orientation_distributions(G, p, cap).zero
