"""Exhaustive enumeration of triangulated 1-planar embeddings of small graphs.

A triangulated 1-planar embedding with ``k`` crossings planarizes to a
maximal planar graph on ``n + k`` vertices, so ``k = m - 3n + 6`` is fixed
by the edge count.  Every crossing sits in a kite whose four boundary
edges are uncrossed.  The oracle therefore picks ``k`` pairwise compatible
crossing pairs from the K4s of the graph and checks the planarization.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from itertools import combinations
from typing import Iterable, Iterator, Mapping, Sequence

import networkx as nx

from .coloring import CROSSED, Color, EdgeColoring
from .formula import IC, NIC, ONE_PLANAR, Block, Kite, check_mode, make_kite
from .graph import Edge, Graph, NotPlanarError, edge, enumerate_k4, faces, planar_rotation

Pair = tuple[Edge, Edge]


class EmbeddingRejected(ValueError):
    """A crossing set failed validation; the message names the first violation."""


def _adjacency(g: Graph | Mapping[int, Iterable[int]]) -> dict[int, set[int]]:
    if isinstance(g, Graph):
        return g.adjacency()
    return {v: set(ns) for v, ns in g.items()}


def _edges(adj: Mapping[int, Iterable[int]]) -> set[Edge]:
    return {edge(u, v) for u in adj for v in adj[u] if u < v}


def normalize_pair(e: Sequence[int], f: Sequence[int]) -> Pair:
    return tuple(sorted((edge(*e), edge(*f))))


@dataclass(frozen=True)
class Embedding:
    """A crossing set plus the rotation system of its planarization.

    Dummy vertices of the planarization are numbered ``-1, -2, ...`` in the
    order of ``crossings``.
    """

    crossings: tuple[Pair, ...]
    rotation: Mapping[int, tuple[int, ...]] = field(compare=False, hash=False)
    mode: str = ONE_PLANAR

    @property
    def kites(self) -> list[Kite]:
        return [make_kite(e, f, i) for i, (e, f) in enumerate(self.crossings)]

    def crossed_edges(self) -> set[Edge]:
        return {e for pair in self.crossings for e in pair}

    def to_json(self) -> dict:
        return {
            "crossings": [[list(e), list(f)] for e, f in self.crossings],
            "rotations": {str(v): list(ns) for v, ns in sorted(self.rotation.items())},
        }

    def dumps(self) -> str:
        return json.dumps(self.to_json())

    @classmethod
    def from_json(cls, data: Mapping, mode: str = ONE_PLANAR) -> "Embedding":
        crossings = tuple(sorted(normalize_pair(e, f) for e, f in data["crossings"]))
        rotation = {int(v): tuple(ns) for v, ns in data.get("rotations", {}).items()}
        return cls(crossings, rotation, mode)


# ---------------------------------------------------------------------------
# constraints


@dataclass(frozen=True)
class Constraints:
    """What a coloring and the enclosing split demand of an embedding."""

    planar: frozenset = frozenset()
    crossed: frozenset = frozenset()

    @classmethod
    def build(cls, coloring: EdgeColoring | Mapping | None = None, planar: Iterable[Edge] = ()) -> "Constraints":
        planar = {edge(*e) for e in planar}
        crossed = set()
        if coloring is not None:
            for e, c in coloring.items():
                c = Color(c)
                if c is Color.BLACK:
                    planar.add(e)
                elif c in CROSSED:
                    crossed.add(e)
        # edges on the outer cycle of a split are planar whatever their color
        crossed -= planar
        return cls(frozenset(planar), frozenset(crossed))

    def touched_vertices(self) -> set[int]:
        return {v for e in self.planar | self.crossed for v in e}


def _as_constraints(constraints, planar=()) -> Constraints:
    if isinstance(constraints, Constraints):
        if planar:
            return Constraints(constraints.planar | {edge(*e) for e in planar}, constraints.crossed - {edge(*e) for e in planar})
        return constraints
    return Constraints.build(constraints, planar)


# ---------------------------------------------------------------------------
# validation


def _kite_boundary(pair: Pair) -> list[Edge]:
    (a, b), (c, d) = pair
    return [edge(x, y) for x in (a, b) for y in (c, d)]


def _pairs_compatible(p: Pair, q: Pair, mode: str) -> bool:
    if set(p) & set(q):
        return False
    # an edge crossed in one kite cannot bound another
    if set(p) & set(_kite_boundary(q)) or set(q) & set(_kite_boundary(p)):
        return False
    vp = {v for e in p for v in e}
    vq = {v for e in q for v in e}
    shared = len(vp & vq)
    if mode == IC and shared:
        return False
    if mode == NIC and shared > 1:
        return False
    return True


def planarization(adj: Mapping[int, Iterable[int]], crossings: Sequence[Pair]) -> dict[int, set[int]]:
    out = {v: set(ns) for v, ns in adj.items()}
    for i, ((a, b), (c, d)) in enumerate(crossings):
        x = -(i + 1)
        out[a].discard(b)
        out[b].discard(a)
        out[c].discard(d)
        out[d].discard(c)
        out[x] = {a, b, c, d}
        for v in (a, b, c, d):
            out[v].add(x)
    return out


def validate_embedding(
    g: Graph | Mapping[int, Iterable[int]],
    crossings: Iterable[Sequence[Sequence[int]]],
    constraints: EdgeColoring | Constraints | Mapping | None = None,
    mode: str = ONE_PLANAR,
    planar: Iterable[Edge] = (),
) -> Embedding:
    """Check a crossing set and return the embedding it defines.

    Raises :class:`EmbeddingRejected` naming the first violated condition.
    """
    mode = check_mode(mode)
    adj = _adjacency(g)
    edges = _edges(adj)
    cons = _as_constraints(constraints, planar)
    pairs = sorted({normalize_pair(e, f) for e, f in crossings})
    for p in pairs:
        (a, b), (c, d) = p
        if not {p[0], p[1]} <= edges:
            raise EmbeddingRejected(f"pair {p}: edge missing from the graph")
        if len({a, b, c, d}) != 4:
            raise EmbeddingRejected(f"pair {p}: edges share an endpoint")
        if not set(_kite_boundary(p)) <= edges:
            raise EmbeddingRejected(f"pair {p}: kite boundary edge missing")
    for p, q in combinations(pairs, 2):
        if set(p) & set(q):
            raise EmbeddingRejected(f"pairs {p} and {q} share an edge")
    crossed = {e for p in pairs for e in p}
    for p in pairs:
        hit = set(_kite_boundary(p)) & crossed
        if hit:
            raise EmbeddingRejected(f"pair {p}: boundary edge {min(hit)} is crossed")
    bad = crossed & cons.planar
    if bad:
        raise EmbeddingRejected(f"edge {min(bad)} must stay planar")
    missing = cons.crossed - crossed
    if missing:
        raise EmbeddingRejected(f"edge {min(missing)} must be crossed")
    if mode != ONE_PLANAR:
        for p, q in combinations(pairs, 2):
            if not _pairs_compatible(p, q, mode):
                raise EmbeddingRejected(f"pairs {p} and {q} violate {mode.upper()}")
    n = len(adj)
    if n <= 2:
        if pairs:
            raise EmbeddingRejected("too few vertices for a crossing")
        return Embedding((), {v: tuple(sorted(adj[v])) for v in adj}, mode)
    plan = planarization(adj, pairs)
    n2 = len(plan)
    m2 = sum(len(ns) for ns in plan.values()) // 2
    if m2 != 3 * n2 - 6:
        raise EmbeddingRejected(f"planarization has {m2} edges, a triangulation needs {3 * n2 - 6}")
    try:
        rotation = planar_rotation(plan, check_connectivity=False)
    except NotPlanarError:
        raise EmbeddingRejected("planarization is not planar") from None
    for i, ((a, b), (c, d)) in enumerate(pairs):
        ring = rotation[-(i + 1)]
        pos = {v: j for j, v in enumerate(ring)}
        if (pos[a] - pos[b]) % 4 != 2 or (pos[c] - pos[d]) % 4 != 2:
            raise EmbeddingRejected(f"pair {pairs[i]}: rotation at the crossing does not alternate")
    for face in faces(rotation):
        if len(face) != 3:
            raise EmbeddingRejected(f"face of length {len(face)}")
    return Embedding(tuple(pairs), {v: tuple(ns) for v, ns in rotation.items()}, mode)


def is_valid(g, crossings, constraints=None, mode: str = ONE_PLANAR, planar: Iterable[Edge] = ()) -> bool:
    try:
        validate_embedding(g, crossings, constraints, mode, planar)
    except EmbeddingRejected:
        return False
    return True


# ---------------------------------------------------------------------------
# enumeration


def crossing_count(n: int, m: int) -> int:
    """Number of crossings of any triangulated 1-planar embedding."""
    return m - 3 * n + 6


def candidate_pairs(adj: Mapping[int, Iterable[int]], cons: Constraints) -> list[Pair]:
    out = []
    for a, b, c, d in enumerate_k4(adj):
        for p in (((a, b), (c, d)), ((a, c), (b, d)), ((a, d), (b, c))):
            if set(p) & cons.planar:
                continue
            if set(_kite_boundary(p)) & cons.crossed:
                continue
            out.append(normalize_pair(*p))
    return sorted(set(out))


def _crossing_sets(pairs: list[Pair], k: int, mode: str, must_cross: frozenset) -> Iterator[tuple[Pair, ...]]:
    """k-subsets of pairwise compatible pairs covering ``must_cross``."""
    ok = [[_pairs_compatible(p, q, mode) for q in pairs] for p in pairs]

    def grow(start: int, chosen: list[int]) -> Iterator[tuple[Pair, ...]]:
        if len(chosen) == k:
            covered = {e for i in chosen for e in pairs[i]}
            if must_cross <= covered:
                yield tuple(pairs[i] for i in chosen)
            return
        for i in range(start, len(pairs) - (k - len(chosen)) + 1):
            if all(ok[i][j] for j in chosen):
                chosen.append(i)
                yield from grow(i + 1, chosen)
                chosen.pop()

    yield from grow(0, [])


def enumerate_embeddings(
    g: Graph | Mapping[int, Iterable[int]],
    constraints: EdgeColoring | Constraints | Mapping | None = None,
    mode: str = ONE_PLANAR,
    planar: Iterable[Edge] = (),
    limit: int | None = None,
) -> list[Embedding]:
    """All triangulated embeddings in ``mode`` that respect the constraints.

    Sorted by crossing set.  ``limit`` stops after that many embeddings.
    """
    mode = check_mode(mode)
    adj = _adjacency(g)
    cons = _as_constraints(constraints, planar)
    n = len(adj)
    m = sum(len(ns) for ns in adj.values()) // 2
    if n <= 2:
        return [] if cons.crossed else [Embedding((), {v: tuple(sorted(adj[v])) for v in adj}, mode)]
    k = crossing_count(n, m)
    if k < 0 or k > max(n - 2, 0):
        return []
    pairs = candidate_pairs(adj, cons)
    out = []
    for cs in _crossing_sets(pairs, k, mode, cons.crossed):
        try:
            out.append(validate_embedding(adj, cs, cons, mode))
        except EmbeddingRejected:
            continue
        if limit is not None and len(out) >= limit:
            break
    return out


def has_embedding(g, constraints=None, mode: str = ONE_PLANAR, planar: Iterable[Edge] = ()) -> bool:
    return bool(enumerate_embeddings(g, constraints, mode, planar, limit=1))


def naive_enumerate(
    g: Graph | Mapping[int, Iterable[int]],
    constraints=None,
    mode: str = ONE_PLANAR,
    planar: Iterable[Edge] = (),
) -> list[tuple[Pair, ...]]:
    """Second generator: every set of pairs of disjoint edges, filtered by validation.

    Exponential in the number of edge pairs; only for cross-checking on
    small graphs.  Sets are tried up to size ``n - 2``.
    """
    adj = _adjacency(g)
    edges = sorted(_edges(adj))
    all_pairs = [
        (e, f) for e, f in combinations(edges, 2) if not set(e) & set(f)
    ]
    out = []
    n = len(adj)
    for size in range(0, max(n - 2, 0) + 1):
        for cs in combinations(all_pairs, size):
            used = [e for p in cs for e in p]
            if len(used) != len(set(used)):
                continue
            if is_valid(adj, cs, constraints, mode, planar):
                out.append(tuple(sorted(cs)))
    return sorted(out)


# ---------------------------------------------------------------------------
# counting up to symmetry


def automorphisms(adj: Mapping[int, Iterable[int]], fixed: Iterable[int] = ()) -> list[dict[int, int]]:
    """Automorphisms fixing every vertex of ``fixed``."""
    h = nx.Graph()
    fixed = set(fixed)
    for v in adj:
        h.add_node(v, tag=v if v in fixed else None)
    h.add_edges_from((u, v) for u in adj for v in adj[u])
    gm = nx.algorithms.isomorphism.GraphMatcher(h, h, node_match=lambda x, y: x["tag"] == y["tag"])
    return list(gm.isomorphisms_iter())


def _image(cs: Sequence[Pair], perm: Mapping[int, int]) -> tuple[Pair, ...]:
    return tuple(sorted(normalize_pair((perm[a], perm[b]), (perm[c], perm[d])) for (a, b), (c, d) in cs))


def embedding_classes(
    g: Graph | Mapping[int, Iterable[int]],
    constraints=None,
    mode: str = ONE_PLANAR,
    planar: Iterable[Edge] = (),
) -> list[list[Embedding]]:
    """Embeddings grouped into orbits of the automorphisms that fix the constrained vertices."""
    adj = _adjacency(g)
    cons = _as_constraints(constraints, planar)
    embs = enumerate_embeddings(adj, cons, mode)
    auts = automorphisms(adj, cons.touched_vertices())
    seen: dict[tuple, list[Embedding]] = {}
    for e in embs:
        canon = min(_image(e.crossings, p) for p in auts)
        seen.setdefault(canon, []).append(e)
    return [seen[k] for k in sorted(seen)]


def census(g, constraints=None, mode: str = ONE_PLANAR, planar: Iterable[Edge] = ()) -> dict:
    classes = embedding_classes(g, constraints, mode, planar)
    return {
        "mode": mode,
        "labeled": sum(len(c) for c in classes),
        "classes": len(classes),
        "class_sizes": [len(c) for c in classes],
        "representatives": [c[0].to_json()["crossings"] for c in classes],
    }


# ---------------------------------------------------------------------------
# small-graph blocks


def exposed_entities(kite: Kite, exposed: Iterable) -> list:
    ex = set(exposed)
    return [x for x in kite.vertices + kite.planar_edges if x in ex]


def small_graph_block(
    g: Graph | Mapping[int, Iterable[int]],
    constraints=None,
    mode: str = IC,
    new_id=None,
    planar: Iterable[Edge] = (),
    exposed: Iterable | None = None,
    source: str = "small graph",
) -> Block:
    """One alternative per embedding, ready to be read as a formula block.

    Kites of the same K4 share an id so that two embeddings differing only
    in which diagonals cross give the same term.  For IC and NIC the
    alternatives are also deduplicated by their K4s, since the mode
    conditions only look at vertex sets.  ``exposed`` restricts the
    formula to the entities visible outside the small graph.
    """
    mode = check_mode(mode)
    embs = enumerate_embeddings(g, constraints, mode, planar)
    ids: dict[tuple, int] = {}
    counter = iter(range(1, 1 << 30))
    new_id = new_id or (lambda: next(counter))
    alternatives = []
    seen = set()
    for emb in embs:
        kites = []
        for e, f in emb.crossings:
            verts = tuple(sorted({*e, *f}))
            if verts not in ids:
                ids[verts] = new_id()
            kites.append(make_kite(e, f, ids[verts]))
        key = tuple(sorted(k.vertices for k in kites)) if mode != ONE_PLANAR else emb.crossings
        if key in seen:
            continue
        seen.add(key)
        alternatives.append(tuple(kites))
    return Block("small", alternatives, source, exposed=None if exposed is None else frozenset(exposed))


def small_graph_formula(
    g: Graph | Mapping[int, Iterable[int]],
    constraints=None,
    mode: str = IC,
    outer: Sequence[int] = (),
    planar: Iterable[Edge] = (),
):
    """The block formula over the entities of the outer cycle ``outer``.

    IC uses the cycle's vertices, NIC its edges.  No embedding gives FALSE.
    """
    mode = check_mode(mode)
    cycle_edges = [edge(outer[i], outer[(i + 1) % len(outer)]) for i in range(len(outer))] if len(outer) > 1 else []
    exposed = set(cycle_edges) if mode == NIC else set(outer)
    planar = set(planar) | set(cycle_edges)
    block = small_graph_block(g, constraints, mode, planar=planar, exposed=exposed)
    return block.formula(NIC if mode == NIC else IC)
