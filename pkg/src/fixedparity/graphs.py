"""Loopless multigraphs with a designated tail and head on every edge.

Vertices are ``0..n-1`` internally; the text format is 1-based.  Edges are
identified by position, so parallel edges are distinct objects.
"""

from __future__ import annotations

from dataclasses import dataclass
from pathlib import Path
from typing import Iterable, Sequence


class GraphError(ValueError):
    pass


class GraphParseError(GraphError):
    def __init__(self, message: str, line: int | None = None):
        self.line = line
        super().__init__(f"line {line}: {message}" if line is not None else message)


class DisconnectedGraphError(GraphError):
    pass


class NotATreeError(GraphError):
    pass


@dataclass(frozen=True)
class MultiGraph:
    n: int
    edges: tuple  # ((tail, head), ...)

    def __init__(self, n: int, edges: Iterable[Sequence[int]]):
        edges = tuple((int(t), int(h)) for t, h in edges)
        if n < 1:
            raise GraphError("a graph needs at least one vertex")
        for i, (t, h) in enumerate(edges):
            if t == h:
                raise GraphError(f"edge {i} is a loop at vertex {t}")
            if not (0 <= t < n and 0 <= h < n):
                raise GraphError(f"edge {i} = ({t}, {h}) has a vertex outside 0..{n - 1}")
        object.__setattr__(self, "n", n)
        object.__setattr__(self, "edges", edges)

    @property
    def m(self) -> int:
        return len(self.edges)

    def degrees(self) -> list[int]:
        deg = [0] * self.n
        for t, h in self.edges:
            deg[t] += 1
            deg[h] += 1
        return deg

    def tail_counts(self) -> list[int]:
        """``x_v``: edges having ``v`` as tail (oriented into ``v`` with probability p)."""
        x = [0] * self.n
        for t, _ in self.edges:
            x[t] += 1
        return x

    def head_counts(self) -> list[int]:
        """``y_v``: edges having ``v`` as head (oriented into ``v`` with probability 1-p)."""
        y = [0] * self.n
        for _, h in self.edges:
            y[h] += 1
        return y

    def incident(self, v: int) -> list[int]:
        return [i for i, (t, h) in enumerate(self.edges) if v in (t, h)]

    def other_end(self, edge: int, v: int) -> int:
        t, h = self.edges[edge]
        return h if v == t else t

    def flipped(self, mask: Iterable[int]) -> "MultiGraph":
        """Swap tail and head on the edges listed in ``mask``."""
        mask = set(mask)
        return MultiGraph(
            self.n, [(h, t) if i in mask else (t, h) for i, (t, h) in enumerate(self.edges)]
        )

    def is_connected(self) -> bool:
        return len(connected_components(self)) == 1

    def to_text(self) -> str:
        lines = [f"{self.n} {self.m}"]
        lines += [f"{t + 1} {h + 1}" for t, h in self.edges]
        return "\n".join(lines) + "\n"


def parse_graph(text: str) -> MultiGraph:
    """Read ``n m`` then ``m`` lines of ``tail head`` (1-based); ``#`` starts a comment."""
    rows = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        parts = line.split()
        if len(parts) != 2:
            raise GraphParseError(f"expected two integers, got {line!r}", lineno)
        try:
            rows.append((lineno, int(parts[0]), int(parts[1])))
        except ValueError:
            raise GraphParseError(f"expected two integers, got {line!r}", lineno) from None
    if not rows:
        raise GraphParseError("missing header line 'n m'")
    header_line, n, m = rows[0]
    if n < 1 or m < 0:
        raise GraphParseError(f"bad header n={n} m={m}", header_line)
    body = rows[1:]
    if len(body) != m:
        raise GraphParseError(f"header announces {m} edges, found {len(body)}", header_line)
    edges = []
    for lineno, t, h in body:
        if t == h:
            raise GraphParseError(f"loop edge at vertex {t}", lineno)
        if not (1 <= t <= n and 1 <= h <= n):
            raise GraphParseError(f"vertex id outside 1..{n}", lineno)
        edges.append((t - 1, h - 1))
    return MultiGraph(n, edges)


def read_graph(path: str | Path) -> MultiGraph:
    return parse_graph(Path(path).read_text())


class _DisjointSet:
    def __init__(self, n: int):
        self.parent = list(range(n))

    def find(self, x: int) -> int:
        while self.parent[x] != x:
            self.parent[x] = self.parent[self.parent[x]]
            x = self.parent[x]
        return x

    def union(self, a: int, b: int) -> bool:
        ra, rb = self.find(a), self.find(b)
        if ra == rb:
            return False
        self.parent[rb] = ra
        return True


@dataclass(frozen=True)
class Component:
    """A connected piece of a graph together with the original ids."""

    graph: MultiGraph
    vertices: tuple
    edge_ids: tuple


def connected_components(G: MultiGraph) -> list[Component]:
    ds = _DisjointSet(G.n)
    for t, h in G.edges:
        ds.union(t, h)
    groups: dict[int, list[int]] = {}
    for v in range(G.n):
        groups.setdefault(ds.find(v), []).append(v)
    comps = []
    for verts in sorted(groups.values()):
        index = {v: i for i, v in enumerate(verts)}
        ids = tuple(i for i, (t, _) in enumerate(G.edges) if t in index)
        sub = MultiGraph(len(verts), [(index[G.edges[i][0]], index[G.edges[i][1]]) for i in ids])
        comps.append(Component(sub, tuple(verts), ids))
    return comps


def disjoint_union(graphs: Sequence[MultiGraph]) -> MultiGraph:
    edges, offset = [], 0
    for g in graphs:
        edges += [(t + offset, h + offset) for t, h in g.edges]
        offset += g.n
    return MultiGraph(offset, edges)


def spanning_tree_containing(G: MultiGraph, edge: int) -> tuple[int, ...]:
    """Edge ids of a spanning tree of ``G`` that uses edge ``edge``.

    Kruskal-style: the required edge goes in first, then every other edge
    joining two different components in input order.
    """
    if not 0 <= edge < G.m:
        raise GraphError(f"edge {edge} not in graph")
    ds = _DisjointSet(G.n)
    chosen = [edge]
    ds.union(*G.edges[edge])
    for i, (t, h) in enumerate(G.edges):
        if i != edge and ds.union(t, h):
            chosen.append(i)
    if len(chosen) != G.n - 1:
        raise DisconnectedGraphError("graph is not connected")
    return tuple(sorted(chosen))


def is_spanning_tree(G: MultiGraph, edge_ids: Iterable[int]) -> bool:
    edge_ids = list(edge_ids)
    if len(edge_ids) != G.n - 1 or len(set(edge_ids)) != len(edge_ids):
        return False
    ds = _DisjointSet(G.n)
    return all(ds.union(*G.edges[i]) for i in edge_ids)


@dataclass(frozen=True)
class GoodLabeling:
    """Vertex order ``v_1..v_n`` and tree-edge order ``e_1..e_{n-1}``.

    Condition: for ``i < n``, ``e_i`` is the only edge among ``e_i..e_{n-1}``
    that touches ``v_i``.  ``edges[-1]`` is the chosen edge ``f``.
    """

    vertices: tuple
    edges: tuple

    def swapped(self) -> "GoodLabeling":
        """Exchange the labels of the two endpoints of the last edge."""
        v = self.vertices
        return GoodLabeling(v[:-2] + (v[-1], v[-2]), self.edges)


def good_labeling(
    G: MultiGraph, f: int, tree_edges: Iterable[int] | None = None, swap: bool = False
) -> GoodLabeling:
    """Label a spanning tree by repeatedly peeling leaves, keeping ``f`` for last.

    ``tree_edges`` defaults to all edges of ``G`` (which must then be a tree).
    Leaves are peeled in increasing vertex order each round; the endpoints of
    ``f`` are never peeled.  ``swap`` exchanges which endpoint of ``f`` is
    ``v_n``.
    """
    tree = tuple(range(G.m)) if tree_edges is None else tuple(tree_edges)
    if G.n < 2:
        raise NotATreeError("a good labeling needs at least two vertices")
    if not is_spanning_tree(G, tree):
        raise NotATreeError("edge set is not a spanning tree")
    if f not in tree:
        raise GraphError(f"edge {f} is not in the tree")
    a, b = G.edges[f]
    last_two = (b, a) if swap else (a, b)
    spared = set(last_two)

    alive = set(tree)
    deg = [0] * G.n
    for i in alive:
        t, h = G.edges[i]
        deg[t] += 1
        deg[h] += 1
    vertices, edges = [], []
    while len(alive) > 1:
        leaves = [v for v in range(G.n) if deg[v] == 1 and v not in spared]
        for v in leaves:
            (e,) = [i for i in alive if v in G.edges[i]]
            vertices.append(v)
            edges.append(e)
            alive.remove(e)
            deg[v] -= 1
            deg[G.other_end(e, v)] -= 1
    vertices += [last_two[1], last_two[0]]
    edges.append(f)
    return GoodLabeling(tuple(vertices), tuple(edges))


def verify_good_labeling(G: MultiGraph, labeling: GoodLabeling, f: int | None = None) -> bool:
    verts, edges = labeling.vertices, labeling.edges
    if sorted(verts) != list(range(G.n)) or len(edges) != G.n - 1:
        return False
    if not is_spanning_tree(G, edges):
        return False
    if f is not None and edges[-1] != f:
        return False
    for i in range(G.n - 1):
        touching = [e for e in edges[i:] if verts[i] in G.edges[e]]
        if touching != [edges[i]]:
            return False
    return True
