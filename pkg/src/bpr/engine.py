"""Mutable working state of one recognition run.

A *part* is a subgraph still being reduced.  Splitting at a separating
cycle carves the smaller side into a new part and keeps reducing the
larger side in place, so the gadget cache of the larger side survives.

The cache keeps, per gadget kind, the candidates that might have become
applicable since they were last checked.  After a mutation only candidates
touching a small vertex set can change status:

* removing edge ``uv`` can disconnect ``G - S - F`` only if every common
  neighbour ``p`` of ``u`` and ``v`` is in ``S`` or joined to ``u``/``v`` by an
  edge of ``F``; edges of ``F`` lie in K4s with two vertices of ``S``, so ``S``
  meets ``N[p]`` for any fixed common neighbour ``p``
* coloring or removing ``xy`` changes ``C[a, b]`` only for ``a, b`` in
  ``{x, y}`` plus the common neighbours of ``x`` and ``y``
* carving off the inside of a cycle ``C`` only matters for candidates
  meeting ``C`` or its neighbourhood, since any path through the removed
  side can be rerouted along ``C``
"""

from __future__ import annotations

from typing import Iterable

from .coloring import Color, EdgeColoring
from .gadgets import CHECKS, ORDER, SEP3, SEP4, SEPEDGE, Gadget, candidate_keys, k4s_touching, k5s_touching, all_k4, find_k5
from .graph import Edge, edge


class PartColors:
    """Global coloring with a private overlay for the part's virtual chords."""

    __slots__ = ("base", "virtual", "local", "listener")

    def __init__(self, base: EdgeColoring, virtual: set[Edge] | None = None, local: EdgeColoring | None = None):
        self.base = base
        self.virtual = virtual if virtual is not None else set()
        self.local = local if local is not None else EdgeColoring()
        self.listener = None

    def _store(self, e: Edge) -> EdgeColoring:
        return self.local if e in self.virtual else self.base

    def __contains__(self, e) -> bool:
        return e in self._store(e)

    def get(self, e: Edge, default=None):
        return self._store(e).get(e, default)

    def extend(self, e: Edge, color: Color) -> Color:
        e = edge(*e)
        store = self._store(e)
        fresh = e not in store
        out = store.extend(e, color)
        if fresh and self.listener is not None:
            self.listener(e)
        return out

    def extend_many(self, edges: Iterable[Edge], color: Color) -> None:
        for e in edges:
            self.extend(e, color)


class Part:
    """A subgraph under reduction."""

    _ids = 0

    def __init__(self, adj: dict[int, set[int]], colors: PartColors, boundary: set[int] | None = None,
                 boundary_edges: set[Edge] | None = None, incremental: bool = True):
        Part._ids += 1
        self.id = Part._ids
        self.adj = adj
        self.colors = colors
        self.boundary = boundary or set()
        self.boundary_edges = boundary_edges or set()
        self.incremental = incremental
        self.cache = GadgetCache(self)
        colors.listener = self.cache.on_color

    @property
    def n(self) -> int:
        return len(self.adj)

    @property
    def m(self) -> int:
        return sum(len(s) for s in self.adj.values()) // 2

    def edges(self) -> list[Edge]:
        return sorted((u, w) for u in self.adj for w in self.adj[u] if u < w)

    def remove_edge(self, e: Edge) -> None:
        u, v = e
        cn = self.adj[u] & self.adj[v]
        self.adj[u].discard(v)
        self.adj[v].discard(u)
        self.colors.virtual.discard(e)
        self.cache.on_remove(u, v, cn)

    def add_virtual(self, e: Edge) -> None:
        u, v = e
        self.adj[u].add(v)
        self.adj[v].add(u)
        self.colors.virtual.add(e)
        self.colors.local.extend(e, Color.BLACK)

    def remove_vertices(self, vs: Iterable[int]) -> None:
        vs = set(vs)
        for v in vs:
            for w in self.adj.pop(v):
                if w not in vs:
                    self.adj[w].discard(v)
        self.colors.virtual = {e for e in self.colors.virtual if not (set(e) & vs)}

    def subpart(self, vertices: set[int], drop: Iterable[Edge] = ()) -> "Part":
        """A new part on ``vertices`` sharing the global coloring."""
        drop = set(drop)
        adj = {v: {w for w in self.adj[v] if w in vertices and edge(v, w) not in drop} for v in vertices}
        virtual = {e for e in self.colors.virtual if e[0] in vertices and e[1] in vertices and e not in drop}
        local = EdgeColoring({e: self.colors.local[e] for e in virtual if e in self.colors.local})
        colors = PartColors(self.colors.base, virtual, local)
        return Part(adj, colors, self.boundary & vertices,
                    {e for e in self.boundary_edges if e[0] in vertices and e[1] in vertices},
                    self.incremental)

    def has_k4(self) -> bool:
        return self.cache.has_k4()


class GadgetCache:
    def __init__(self, part: Part):
        self.part = part
        self.full = {k: True for k in ORDER}
        self.pending_v: dict[str, set[int]] = {k: set() for k in ORDER}
        self.pending_k: dict[str, set] = {k: set() for k in ORDER}
        self._k4: set | None = None
        self._k5: set | None = None
        # K4s without an MC4 reading, skipped until one of their vertices is touched
        self.dead: set = set()
        self.checks = 0

    # -- invalidation -------------------------------------------------
    def touch(self, vertices: Iterable[int] | None) -> None:
        if vertices is None or not self.part.incremental:
            for k in ORDER:
                self.full[k] = True
            self._k4 = self._k5 = None
            self.dead = set()
            return
        vs = set(vertices)
        if self.dead:
            self.dead = {q for q in self.dead if vs.isdisjoint(q)}
        for k in ORDER:
            if not self.full[k]:
                self.pending_v[k] |= vs

    def on_remove(self, u: int, v: int, cn: set[int]) -> None:
        adj = self.part.adj
        if self._k4 is not None:
            self._k4 = {q for q in self._k4 if not (u in q and v in q)}
        if self._k5 is not None:
            self._k5 = {q for q in self._k5 if not (u in q and v in q)}
        live = [p for p in cn if p in adj]
        if not live:
            self.touch(None)
            return
        p0 = min(live, key=lambda p: (len(adj[p]), p))
        self.touch({u, v} | set(live) | adj[p0] | {p0})

    def on_color(self, e: Edge) -> None:
        x, y = e
        adj = self.part.adj
        if x in adj and y in adj:
            self.touch({x, y} | (adj[x] & adj[y]))

    def on_carve(self, cycle: Iterable[int]) -> None:
        adj = self.part.adj
        cyc = [c for c in cycle if c in adj]
        area = set(cyc)
        for c in cyc:
            area |= adj[c]
        self.touch(area)
        if self._k4 is not None:
            self._k4 = {q for q in self._k4 if all(v in adj for v in q)}
            self._k4 |= k4s_touching(adj, cyc)
        if self._k5 is not None:
            self._k5 = {q for q in self._k5 if all(v in adj for v in q)}
            self._k5 |= k5s_touching(adj, cyc)

    # -- queries ------------------------------------------------------
    def next_gadget(self) -> Gadget | None:
        adj, colors = self.part.adj, self.part.colors
        for kind in ORDER:
            if self.full[kind] or not self.part.incremental:
                keys = set(candidate_keys(kind, adj))
            else:
                keys = self.pending_k[kind]
                if self.pending_v[kind]:
                    keys |= set(candidate_keys(kind, adj, self.pending_v[kind]))
            self.full[kind] = False
            self.pending_v[kind] = set()
            check = CHECKS[kind]
            ordered = sorted(keys)
            for i, key in enumerate(ordered):
                verts = key if kind in (SEP3, SEPEDGE, SEP4) else key[0]
                if any(v not in adj for v in verts):
                    continue
                self.checks += 1
                g = check(adj, colors, key)
                if g is not None:
                    self.pending_k[kind] = set(ordered[i:])
                    return g
            self.pending_k[kind] = set()
        return None

    def k4s(self) -> list[tuple[int, int, int, int]]:
        if self._k4 is None or not self.part.incremental:
            self._k4 = set(all_k4(self.part.adj))
        return sorted(self._k4)

    def has_k4(self) -> bool:
        if self._k4 is None or not self.part.incremental:
            self._k4 = set(all_k4(self.part.adj))
        return bool(self._k4)

    def k5(self) -> tuple[int, ...] | None:
        if self._k5 is None or not self.part.incremental:
            k = find_k5(self.part.adj)
            self._k5 = set() if k is None else {k}
            if k is not None:
                # keep every K5 so later removals can be tracked
                self._k5 = k5s_touching(self.part.adj, list(self.part.adj))
        return min(self._k5) if self._k5 else None
