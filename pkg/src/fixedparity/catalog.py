"""A fixed, reproducible catalog of small loopless multigraphs.

Connected multigraphs are grown one edge at a time from a single edge and
reduced up to isomorphism, so every connected loopless multigraph with at
most ``max_edges`` edges appears exactly once as an undirected shape.
Head/tail designations are then layered on top.
"""

from __future__ import annotations

import itertools
from collections import Counter
from dataclasses import dataclass
from functools import lru_cache

import networkx as nx
import numpy as np

from .graphs import MultiGraph, disjoint_union


@dataclass(frozen=True)
class CatalogEntry:
    name: str
    graph: MultiGraph


def _to_nx(n: int, pairs) -> nx.Graph:
    g = nx.Graph()
    g.add_nodes_from(range(n))
    for (a, b), k in Counter(pairs).items():
        g.add_edge(a, b, mult=str(k))
    return g


def _same_mult(a, b) -> bool:
    return a["mult"] == b["mult"]


@lru_cache(maxsize=None)
def connected_shapes(max_edges: int) -> tuple:
    """Undirected connected multigraphs as ``(n, sorted pairs)``, one per isomorphism class."""
    shapes = [(1, ())]
    frontier = [(2, ((0, 1),))]
    for m in range(1, max_edges + 1):
        shapes += frontier
        if m == max_edges:
            break
        buckets: dict[str, list] = {}
        nxt = []
        for n, pairs in frontier:
            grown = [(n, pairs + (pair,)) for pair in itertools.combinations(range(n), 2)]
            grown += [(n + 1, pairs + ((v, n),)) for v in range(n)]
            for gn, gp in grown:
                gp = tuple(sorted(gp))
                g = _to_nx(gn, gp)
                key = nx.weisfeiler_lehman_graph_hash(g, edge_attr="mult")
                bucket = buckets.setdefault(key, [])
                if any(nx.is_isomorphic(g, h, edge_match=_same_mult) for h in bucket):
                    continue
                bucket.append(g)
                nxt.append((gn, gp))
        frontier = nxt
    return tuple(shapes)


def designations(n: int, pairs, all_flips: bool, rng: np.random.Generator) -> list[MultiGraph]:
    """Every head/tail designation, or the canonical one plus one random flip."""
    base = MultiGraph(n, pairs)
    if all_flips:
        return [base.flipped([i for i in range(base.m) if (mask >> i) & 1]) for mask in range(1 << base.m)]
    out = [base]
    if base.m:
        mask = [i for i in range(base.m) if rng.random() < 0.5] or [0]
        out.append(base.flipped(mask))
    return out


def _named() -> dict[str, MultiGraph]:
    def simple(g: nx.Graph) -> MultiGraph:
        g = nx.convert_node_labels_to_integers(g, ordering="sorted")
        return MultiGraph(g.number_of_nodes(), sorted(tuple(sorted(e)) for e in g.edges()))

    k4 = simple(nx.complete_graph(4))
    return {
        "K5": simple(nx.complete_graph(5)),
        "wheel-6": simple(nx.wheel_graph(6)),
        "wheel-7": simple(nx.wheel_graph(7)),
        "cube": simple(nx.hypercube_graph(3)),
        "K3,3": simple(nx.complete_bipartite_graph(3, 3)),
        "K3,4": simple(nx.complete_bipartite_graph(3, 4)),
        "grid-3x3": simple(nx.grid_2d_graph(3, 3)),
        "petersen-minus-3": simple(nx.petersen_graph().subgraph(range(7))),
        "doubled-K4": MultiGraph(4, list(k4.edges) * 2),
        "cycle-10": simple(nx.cycle_graph(10)),
        "cycle-11-chord": MultiGraph(11, [(i, (i + 1) % 11) for i in range(11)] + [(0, 5)]),
        "theta-3-3-3": MultiGraph(8, [(0, 2), (2, 3), (3, 1), (0, 4), (4, 5), (5, 1), (0, 6), (6, 7), (7, 1)]),
        "banana-9": MultiGraph(2, [(0, 1)] * 9),
        "prism-4": simple(nx.circular_ladder_graph(4)),
    }


@lru_cache(maxsize=None)
def build_catalog(max_edges: int = 8, all_flips_up_to: int = 5, seed: int = 20240601) -> tuple:
    """Connected catalog entries: all shapes with ``m <= max_edges`` plus named larger graphs."""
    rng = np.random.default_rng(seed)
    entries = []
    for idx, (n, pairs) in enumerate(connected_shapes(max_edges)):
        m = len(pairs)
        for j, G in enumerate(designations(n, pairs, m <= all_flips_up_to, rng)):
            entries.append(CatalogEntry(f"n{n}-m{m}-s{idx}-d{j}", G))
    for name, G in _named().items():
        for j, H in enumerate(designations(G.n, G.edges, False, rng)):
            entries.append(CatalogEntry(f"{name}-d{j}", H))
    return tuple(entries)


def connected_catalog(max_edges: int = 8) -> list[CatalogEntry]:
    return [e for e in build_catalog() if e.graph.m <= max_edges]


def unit_excess_catalog(max_n: int = 10, seed: int = 7) -> list[CatalogEntry]:
    """Graphs with ``m = n``: connected shapes up to ``max_n`` edges and disjoint unions of them.

    Connected ``m = n`` shapes with ``n <= 8`` come from the exhaustive
    catalog; unions pair those with each other and with extra components
    (single vertex plus a loop-free ``m = n + 1`` piece) keeping ``m = n``
    overall.
    """
    rng = np.random.default_rng(seed)
    exhaustive = [(n, p) for n, p in connected_shapes(min(max_n, 8)) if len(p) == n]
    out = [CatalogEntry(f"unicyclic-n{n}-{i}", MultiGraph(n, p)) for i, (n, p) in enumerate(exhaustive)]
    for n in range(9, max_n + 1):
        out.append(CatalogEntry(f"cycle-{n}", MultiGraph(n, [(i, (i + 1) % n) for i in range(n)])))
        out.append(
            CatalogEntry(
                f"cycle-{n - 1}-pendant",
                MultiGraph(n, [(i, (i + 1) % (n - 1)) for i in range(n - 1)] + [(0, n - 1)]),
            )
        )
    small = [MultiGraph(n, p) for n, p in exhaustive if n <= 5]
    surplus = [MultiGraph(n, p) for n, p in connected_shapes(4) if len(p) == n + 1]
    point = MultiGraph(1, [])
    for i, (a, b) in enumerate(itertools.combinations_with_replacement(range(len(small)), 2)):
        G = disjoint_union([small[a], small[b]])
        if G.n <= max_n:
            out.append(CatalogEntry(f"union-{a}-{b}", G))
    for i, piece in enumerate(surplus):
        G = disjoint_union([piece, point])
        out.append(CatalogEntry(f"surplus-{i}-plus-point", G))
    # random head/tail flips so designations vary
    flipped = []
    for e in out:
        mask = [i for i in range(e.graph.m) if rng.random() < 0.5]
        flipped.append(CatalogEntry(e.name + "-flip", e.graph.flipped(mask)))
    return out + flipped
