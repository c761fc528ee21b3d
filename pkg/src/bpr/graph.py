"""Simple undirected graphs and the structural primitives used by the recognizer."""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass, field
from itertools import combinations
from typing import Iterable, Mapping, Sequence

import networkx as nx

Edge = tuple[int, int]


class GraphError(ValueError):
    """Malformed graph input."""


class NotPlanarError(ValueError):
    pass


def edge(u: int, v: int) -> Edge:
    """Canonical form of the undirected edge {u, v}."""
    if u == v:
        raise GraphError(f"loop at vertex {u}")
    return (u, v) if u < v else (v, u)


@dataclass(frozen=True)
class Graph:
    """Immutable simple graph on the dense vertex ids ``0..n-1``.

    ``labels`` maps each dense id back to the id it had in a parent graph
    (identity for graphs built directly).
    """

    n: int
    adj: tuple[frozenset[int], ...]
    edges: frozenset[Edge]
    labels: tuple[int, ...] = field(default=(), compare=False)

    @property
    def m(self) -> int:
        return len(self.edges)

    @property
    def vertices(self) -> range:
        return range(self.n)

    def has_edge(self, u: int, v: int) -> bool:
        return 0 <= u < self.n and v in self.adj[u]

    def degree(self, v: int) -> int:
        return len(self.adj[v])

    def sorted_edges(self) -> list[Edge]:
        return sorted(self.edges)

    def label(self, v: int) -> int:
        return self.labels[v] if self.labels else v

    def adjacency(self) -> dict[int, set[int]]:
        """Mutable copy of the adjacency structure."""
        return {v: set(self.adj[v]) for v in range(self.n)}

    def to_networkx(self) -> nx.Graph:
        g = nx.Graph()
        g.add_nodes_from(range(self.n))
        g.add_edges_from(self.edges)
        return g

    def __repr__(self) -> str:
        return f"Graph(n={self.n}, m={self.m})"


def build_graph(n: int, edge_list: Iterable[Sequence[int]]) -> Graph:
    """Build a graph, rejecting loops, duplicate edges and unknown ids."""
    if n < 0:
        raise GraphError("negative vertex count")
    adj: list[set[int]] = [set() for _ in range(n)]
    edges: set[Edge] = set()
    for pair in edge_list:
        u, v = (int(x) for x in pair)
        if not (0 <= u < n and 0 <= v < n):
            raise GraphError(f"vertex id out of range in edge ({u}, {v})")
        e = edge(u, v)
        if e in edges:
            raise GraphError(f"duplicate edge {e}")
        edges.add(e)
        adj[u].add(v)
        adj[v].add(u)
    return Graph(n, tuple(frozenset(a) for a in adj), frozenset(edges))


def from_adjacency(adj: Mapping[int, Iterable[int]]) -> tuple[Graph, list[int]]:
    """Relabel a dict-of-sets graph densely; returns the graph and the id list."""
    ids = sorted(adj)
    index = {v: i for i, v in enumerate(ids)}
    es = {edge(index[u], index[w]) for u in ids for w in adj[u] if w in index}
    g = build_graph(len(ids), sorted(es))
    return Graph(g.n, g.adj, g.edges, tuple(ids)), ids


def complete_graph(n: int) -> Graph:
    return build_graph(n, combinations(range(n), 2))


def induced_subgraph(g: Graph, vertices: Iterable[int]) -> Graph:
    """Induced subgraph with dense ids; ``labels`` maps back to ``g``'s ids."""
    keep = sorted(set(vertices))
    for v in keep:
        if not 0 <= v < g.n:
            raise GraphError(f"unknown vertex {v}")
    index = {v: i for i, v in enumerate(keep)}
    es = [(index[u], index[v]) for u, v in g.edges if u in index and v in index]
    sub = build_graph(len(keep), es)
    return Graph(sub.n, sub.adj, sub.edges, tuple(g.label(v) for v in keep))


def connected_components(
    adj: Graph | Mapping[int, Iterable[int]],
    removed_vertices: Iterable[int] = (),
    removed_edges: Iterable[Edge] = (),
) -> list[set[int]]:
    """Components of the graph after deleting vertices and edges.

    Accepts a :class:`Graph` or a dict-of-sets adjacency.  Components are
    listed in order of their smallest vertex.
    """
    if isinstance(adj, Graph):
        nbrs: Mapping[int, Iterable[int]] = dict(enumerate(adj.adj))
    else:
        nbrs = adj
    gone = set(removed_vertices)
    cut = {edge(*e) for e in removed_edges}
    seen: set[int] = set(gone)
    comps = []
    for s in sorted(nbrs):
        if s in seen:
            continue
        comp = {s}
        seen.add(s)
        queue = deque([s])
        while queue:
            u = queue.popleft()
            for w in nbrs[u]:
                if w in seen:
                    continue
                if cut and (min(u, w), max(u, w)) in cut:
                    continue
                seen.add(w)
                comp.add(w)
                queue.append(w)
        comps.append(comp)
    return comps


def is_disconnected(
    adj: Mapping[int, Iterable[int]],
    removed_vertices: Iterable[int],
    removed_edges: Iterable[Edge] = (),
) -> bool:
    """True iff the surviving graph has at least two components."""
    gone = set(removed_vertices)
    start = next((v for v in adj if v not in gone), None)
    if start is None:
        return False
    cut = set(removed_edges)
    seen = {start}
    stack = [start]
    while stack:
        u = stack.pop()
        for w in adj[u]:
            if w in seen or w in gone:
                continue
            if cut and (min(u, w), max(u, w)) in cut:
                continue
            seen.add(w)
            stack.append(w)
    return len(seen) + len(gone & adj.keys()) < len(adj)


def articulation_points(adj: Mapping[int, Iterable[int]], removed: Iterable[int] = ()) -> set[int]:
    """Cut vertices of the graph with ``removed`` deleted (iterative Tarjan)."""
    gone = set(removed)
    disc: dict[int, int] = {}
    low: dict[int, int] = {}
    cuts: set[int] = set()
    t = 0
    for root in adj:
        if root in gone or root in disc:
            continue
        disc[root] = low[root] = t
        t += 1
        children = 0
        stack = [(root, -1, iter(adj[root]))]
        while stack:
            u, parent, it = stack[-1]
            for w in it:
                if w in gone:
                    continue
                if w not in disc:
                    disc[w] = low[w] = t
                    t += 1
                    if u == root:
                        children += 1
                    stack.append((w, u, iter(adj[w])))
                    break
                if w != parent and disc[w] < low[u]:
                    low[u] = disc[w]
            else:
                stack.pop()
                if stack:
                    p = stack[-1][0]
                    if low[u] < low[p]:
                        low[p] = low[u]
                    if p != root and low[u] >= disc[p]:
                        cuts.add(p)
        if children > 1:
            cuts.add(root)
    return cuts


def _adj_map(g: Graph | Mapping[int, Iterable[int]]) -> Mapping[int, Iterable[int]]:
    return dict(enumerate(g.adj)) if isinstance(g, Graph) else g


def is_k_connected(g: Graph | Mapping[int, Iterable[int]], k: int) -> bool:
    """True iff more than ``k`` vertices and no vertex cut of size < ``k``."""
    if not 1 <= k <= 5:
        raise ValueError("k must lie in 1..5")
    adj = _adj_map(g)
    verts = sorted(adj)
    if len(verts) <= k:
        return False
    # delete every (k-2)-set and require the rest to be biconnected
    for gone in combinations(verts, max(k - 2, 0)):
        if k == 1:
            if is_disconnected(adj, ()):
                return False
            continue
        if is_disconnected(adj, gone) or articulation_points(adj, gone):
            return False
    return True


def separation_pairs(adj: Mapping[int, Iterable[int]]) -> list[tuple[int, int]]:
    """All 2-vertex cuts {u, v} (u < v) of a biconnected graph."""
    pairs = set()
    for v in adj:
        for w in articulation_points(adj, (v,)):
            pairs.add(edge(v, w))
    return sorted(pairs)


def enumerate_k4(g: Graph | Mapping[int, Iterable[int]]) -> list[tuple[int, int, int, int]]:
    """Every 4-clique once, as sorted tuples in lexicographic order.

    Cliques are grown along a degeneracy order so each vertex only looks at
    its later neighbours.
    """
    adj = {v: set(ns) for v, ns in _adj_map(g).items()}
    order = _degeneracy_order(adj)
    rank = {v: i for i, v in enumerate(order)}
    later = {v: {w for w in adj[v] if rank[w] > rank[v]} for v in adj}
    found = []
    for a in order:
        na = later[a]
        for b in na:
            nab = na & later[b]
            for c in nab:
                for d in nab & later[c]:
                    found.append(tuple(sorted((a, b, c, d))))
    found.sort()
    return found


def _degeneracy_order(adj: Mapping[int, set[int]]) -> list[int]:
    deg = {v: len(ns) for v, ns in adj.items()}
    buckets: dict[int, set[int]] = {}
    for v, d in deg.items():
        buckets.setdefault(d, set()).add(v)
    order: list[int] = []
    done: set[int] = set()
    d = 0
    while len(order) < len(adj):
        d = max(d - 1, 0)
        while not buckets.get(d):
            d += 1
        v = min(buckets[d])
        buckets[d].discard(v)
        order.append(v)
        done.add(v)
        for w in adj[v]:
            if w not in done:
                buckets[deg[w]].discard(w)
                deg[w] -= 1
                buckets.setdefault(deg[w], set()).add(w)
    return order


def enumerate_k5(adj: Mapping[int, Iterable[int]]) -> list[tuple[int, ...]]:
    """All 5-cliques as sorted tuples."""
    nbrs = {v: set(ns) for v, ns in adj.items()}
    out = []
    for k4 in enumerate_k4(nbrs):
        common = set.intersection(*(nbrs[v] for v in k4))
        for x in common:
            if x > k4[-1]:
                out.append(k4 + (x,))
    return sorted(out)


def triangles(adj: Mapping[int, Iterable[int]]) -> list[tuple[int, int, int]]:
    """All triangles as sorted tuples, lexicographically ordered."""
    out = []
    for a in adj:
        for b in adj[a]:
            if b <= a:
                continue
            for c in adj[a]:
                if c > b and c in adj[b]:
                    out.append((a, b, c))
    out.sort()
    return out


def crossable_edges(
    g: Graph | Mapping[int, Iterable[int]],
    colored: Mapping[Edge, object] | Iterable[Edge],
    e: Edge,
) -> set[Edge]:
    """C[a, b]: uncolored edges {x, y} such that {a, b, x, y} induces a K4.

    ``colored`` is any container answering ``edge in colored`` for colored
    edges (an :class:`~bpr.coloring.EdgeColoring` works).
    """
    adj = _adj_map(g)
    a, b = e
    if e in colored:
        raise ValueError(f"edge {e} is colored")
    common = set(adj[a]) & set(adj[b])
    out = set()
    for x in common:
        for y in set(adj[x]) & common:
            if x < y:
                f = (x, y)
                if f not in colored:
                    out.add(f)
    return out


def planar_rotation(g: Graph | Mapping[int, Iterable[int]], check_connectivity: bool = True) -> dict[int, list[int]]:
    """Clockwise neighbour order of a planar embedding.

    For 3-connected graphs this is the unique embedding up to reflection.
    """
    adj = _adj_map(g)
    h = nx.Graph()
    h.add_nodes_from(adj)
    h.add_edges_from((u, w) for u in adj for w in adj[u])
    ok, emb = nx.check_planarity(h)
    if not ok:
        raise NotPlanarError("graph is not planar")
    if check_connectivity and not is_k_connected(adj, 3):
        raise ValueError("graph is not 3-connected")
    return {v: list(emb.neighbors_cw_order(v)) for v in adj}


def faces(rotation: Mapping[int, Sequence[int]]) -> list[list[int]]:
    """Face boundaries of a rotation system (each dart used once)."""
    pos = {v: {w: i for i, w in enumerate(ns)} for v, ns in rotation.items()}
    seen: set[tuple[int, int]] = set()
    out = []
    for u in rotation:
        for v in rotation[u]:
            if (u, v) in seen:
                continue
            face = []
            a, b = u, v
            while (a, b) not in seen:
                seen.add((a, b))
                face.append(a)
                ns = rotation[b]
                # next dart: successor of a in b's clockwise order
                a, b = b, ns[(pos[b][a] + 1) % len(ns)]
            out.append(face)
    return out


def is_planar(adj: Mapping[int, Iterable[int]]) -> bool:
    h = nx.Graph()
    h.add_nodes_from(adj)
    h.add_edges_from((u, w) for u in adj for w in adj[u])
    return nx.check_planarity(h)[0]


def is_triangulated_planar(g: Graph | Mapping[int, Iterable[int]]) -> bool:
    """Planar with exactly 3n - 6 edges (n >= 3)."""
    adj = _adj_map(g)
    n = len(adj)
    m = sum(len(list(ns)) for ns in adj.values()) // 2
    if n < 3 or m != 3 * n - 6:
        return False
    return is_planar(adj)
