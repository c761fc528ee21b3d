"""Deterministic graph families for tests, demos and the CLI."""

from __future__ import annotations

import random
from itertools import combinations
from typing import Iterable, Sequence

from .graph import Edge, Graph, GraphError, build_graph, complete_graph, edge, faces, is_triangulated_planar, planar_rotation


def _graph(n: int, edges: Iterable[Sequence[int]]) -> Graph:
    return build_graph(n, sorted({edge(*e) for e in edges}))


# ---------------------------------------------------------------------------
# quadrangulations and optimal 1-planar graphs


def cube() -> Graph:
    """The 3-cube Q3, vertices as 3-bit words."""
    es = [(v, v ^ (1 << i)) for v in range(8) for i in range(3) if v < v ^ (1 << i)]
    return _graph(8, es)


def pseudo_double_wheel(k: int) -> Graph:
    """Cycle ``0..2k-1`` with pole ``2k`` on the even and pole ``2k+1`` on the odd vertices."""
    if k < 3:
        raise ValueError("k must be at least 3")
    c = 2 * k
    es = [(i, (i + 1) % c) for i in range(c)]
    es += [(c, i) for i in range(0, c, 2)] + [(c + 1, i) for i in range(1, c, 2)]
    return _graph(c + 2, es)


def cylinder_quadrangulation(rings: int, length: int = 4) -> Graph:
    """``rings`` stacked cycles of even ``length`` joined by rungs, both ends capped.

    A 4-cycle end is already a face; longer ends get a hub on every other
    vertex.  Degrees stay bounded, so the family scales without hubs.
    """
    if rings < 2 or length < 4 or length % 2:
        raise ValueError("need rings >= 2 and an even length >= 4")
    es = []
    vid = lambda r, i: r * length + i % length
    for r in range(rings):
        es += [(vid(r, i), vid(r, i + 1)) for i in range(length)]
        if r + 1 < rings:
            es += [(vid(r, i), vid(r + 1, i)) for i in range(length)]
    n = rings * length
    if length > 4:
        top, bottom = n, n + 1
        es += [(top, vid(0, i)) for i in range(0, length, 2)]
        es += [(bottom, vid(rings - 1, i)) for i in range(1, length, 2)]
        n += 2
    return _graph(n, es)


def quadrangular_faces(q: Graph) -> list[list[int]]:
    """Faces of a 3-connected planar quadrangulation; raises if it is not one."""
    rot = planar_rotation(q)
    fs = faces(rot)
    if any(len(f) != 4 for f in fs) or q.m != 2 * q.n - 4:
        raise GraphError("input is not a quadrangulation")
    return fs


def gen_optimal_1planar(q: Graph) -> Graph:
    """Insert both diagonals into every face of the quadrangulation ``q``."""
    es = set(q.edges)
    for a, b, c, d in quadrangular_faces(q):
        for e in (edge(a, c), edge(b, d)):
            if e in es:
                raise GraphError(f"diagonal {e} already present; a separating 4-cycle doubles it")
            es.add(e)
    return _graph(q.n, es)


def optimal_crossings(q: Graph) -> list[tuple[Edge, Edge]]:
    """The diagonal pairs of ``gen_optimal_1planar(q)``, one per face."""
    return sorted((edge(a, c), edge(b, d)) for a, b, c, d in quadrangular_faces(q))


# ---------------------------------------------------------------------------
# planar triangulations and kites


def octahedron() -> Graph:
    return _graph(6, [(u, v) for u, v in combinations(range(6), 2) if v != u + 3])


def random_triangulation(n: int, seed: int = 0, flips: int | None = None) -> Graph:
    """Maximal planar graph: stacked insertions followed by random edge flips."""
    if n < 4:
        raise ValueError("n must be at least 4")
    rng = random.Random(seed)
    adj = {v: set() for v in range(n)}
    for u, v in combinations(range(4), 2):
        adj[u].add(v)
        adj[v].add(u)
    tri = [frozenset(f) for f in combinations(range(4), 3)]
    for z in range(4, n):
        f = tri.pop(rng.randrange(len(tri)))
        a, b, c = sorted(f)
        tri += [frozenset((a, b, z)), frozenset((b, c, z)), frozenset((a, c, z))]
        for x in f:
            adj[x].add(z)
            adj[z].add(x)
    faces_of = set(tri)
    for _ in range(flips if flips is not None else 4 * n):
        u = rng.randrange(n)
        v = rng.choice(sorted(adj[u]))
        side = [f for f in faces_of if u in f and v in f]
        if len(side) != 2 or len(adj[u]) <= 3 or len(adj[v]) <= 3:
            continue
        (x,) = side[0] - {u, v}
        (y,) = side[1] - {u, v}
        if y in adj[x]:
            continue
        faces_of -= set(side)
        faces_of |= {frozenset((x, y, u)), frozenset((x, y, v))}
        adj[u].discard(v)
        adj[v].discard(u)
        adj[x].add(y)
        adj[y].add(x)
    return _graph(n, [(u, v) for u in adj for v in adj[u]])


def _slot_kite(rot_faces: list[list[int]], e: Edge) -> tuple[int, int]:
    u, v = e
    apex = [next(x for x in f if x not in e) for f in rot_faces if u in f and v in f]
    if len(apex) != 2:
        raise GraphError(f"{e} is not an inner edge of two triangles")
    return tuple(apex)


def gen_kite_augmented_planar(base: Graph, slots: Sequence[Edge], discipline: str = "1p") -> Graph:
    """Add the missing diagonal to the quadrilateral around each slot edge.

    Slot ``uv`` with incident faces ``uvx`` and ``uvy`` gains ``xy``, which
    crosses ``uv`` inside the kite on ``{u, v, x, y}``.  ``discipline``
    (``ic``, ``nic`` or ``1p``) says how far kites may overlap.
    """
    if not is_triangulated_planar(base):
        raise GraphError("base must be a planar triangulation")
    fs = faces(planar_rotation(base))
    es = set(base.edges)
    kites = []
    for s in slots:
        s = edge(*s)
        x, y = _slot_kite(fs, s)
        xy = edge(x, y)
        if xy in es:
            raise GraphError(f"diagonal {xy} already present")
        kite = (s, xy)
        for other in kites:
            _check_overlap(kite, other, discipline)
        kites.append(kite)
        es.add(xy)
    return _graph(base.n, es)


def _boundary(kite) -> set[Edge]:
    (a, b), (c, d) = kite
    return {edge(p, q) for p in (a, b) for q in (c, d)}


def _check_overlap(k1, k2, discipline: str) -> None:
    if set(k1) & (set(k2) | _boundary(k2)) or set(k2) & _boundary(k1):
        raise GraphError(f"kites {k1} and {k2} share a crossing edge")
    shared = len({v for e in k1 for v in e} & {v for e in k2 for v in e})
    if discipline == "ic" and shared:
        raise GraphError(f"kites {k1} and {k2} share a vertex")
    if discipline == "nic" and shared > 1:
        raise GraphError(f"kites {k1} and {k2} share an edge")


def random_kite_slots(base: Graph, count: int, seed: int = 0, discipline: str = "1p") -> list[Edge]:
    """Up to ``count`` random slot edges obeying ``discipline``."""
    rng = random.Random(seed)
    fs = faces(planar_rotation(base))
    es = set(base.edges)
    order = sorted(es)
    rng.shuffle(order)
    kites: list = []
    added: set[Edge] = set()
    out = []
    for s in order:
        if len(out) >= count:
            break
        x, y = _slot_kite(fs, s)
        xy = edge(x, y)
        if xy in es or xy in added:
            continue
        kite = (s, xy)
        try:
            for other in kites:
                _check_overlap(kite, other, discipline)
        except GraphError:
            continue
        kites.append(kite)
        added.add(xy)
        out.append(s)
    return sorted(out)


def random_triangulated_1planar(n: int, kites: int, seed: int = 0, discipline: str = "1p") -> Graph:
    base = random_triangulation(n, seed)
    return gen_kite_augmented_planar(base, random_kite_slots(base, kites, seed, discipline), discipline)


# ---------------------------------------------------------------------------
# K5 stars and MC4 fixtures


def gen_k5_star(k: int) -> Graph:
    """``k`` K5s around a shared center, in a ring closed by an outer hub.

    Center 0, hub 1, block ``i`` on ``p, q, r, s = 2+4i .. 5+4i``.  Block
    ``i`` is drawn in the wedge between ``0p`` and ``0s`` with outer
    triangle ``0, p, s``; consecutive wedges meet in the triangle
    ``0, s_i, p_{i+1}`` and the hub sees every ``p`` and ``s``.
    """
    if k < 2:
        raise ValueError("k must be at least 2")
    es = []
    for i in range(k):
        p, q, r, s = (2 + 4 * i + j for j in range(4))
        es += list(combinations((0, p, q, r, s), 2))
        nxt = 2 + 4 * ((i + 1) % k)
        es += [(s, nxt), (1, p), (1, s)]
    return _graph(2 + 4 * k, es)


def k2222() -> Graph:
    """The complete 4-partite graph with parts of two: the 8-vertex kite-covered tetrahedron."""
    return gen_optimal_1planar(cube())


def kite_covered_tetrahedron(refine: bool = False) -> Graph:
    """A tetrahedron whose six edges are crossed, with a triangle in each face region.

    Tetrahedron ``0..3``.  Face region ``r`` (opposite corner ``r``) holds a
    triangle of three vertices, one beside each edge of that face.  The
    vertices beside edge ``xy`` in the two regions touching ``xy`` are
    joined by an edge crossing ``xy``.  16 vertices, 48 edges, 6 crossings.

    With ``refine`` each region triangle is filled by an octahedron, adding
    three vertices and nine edges per region (28 vertices, 84 edges).  That
    brings the edge count under the IC bound.
    """
    es = list(combinations(range(4), 2))
    beside: dict[tuple[int, Edge], int] = {}
    nxt = 4
    for r in range(4):
        face = [c for c in range(4) if c != r]
        for x, y in combinations(face, 2):
            beside[(r, (x, y))] = nxt
            nxt += 1
        tri = [beside[(r, e)] for e in combinations(face, 2)]
        es += list(combinations(tri, 2))
        for (x, y) in combinations(face, 2):
            v = beside[(r, (x, y))]
            es += [(v, x), (v, y)]
    for x, y in combinations(range(4), 2):
        r1, r2 = [r for r in range(4) if r not in (x, y)]
        es.append((beside[(r1, (x, y))], beside[(r2, (x, y))]))
    if refine:
        for r in range(4):
            face = [c for c in range(4) if c != r]
            tri = [beside[(r, e)] for e in combinations(face, 2)]
            inner = [nxt, nxt + 1, nxt + 2]
            nxt += 3
            es += list(combinations(inner, 2))
            for i in range(3):
                es += [(inner[i], tri[i]), (inner[i], tri[(i + 1) % 3])]
    return _graph(nxt, es)


def sc_graph() -> Graph:
    """An SC-graph inside an antiprism frame.

    Center 3 with triangle ``0, 1, 2``; vertex ``4 + i`` sits beside the
    triangle edge opposite ``i`` and its edge to the center crosses that
    edge.  The hexagon ``0, 6, 1, 4, 2, 5`` is wrapped by the ring
    ``7..12`` (each ring vertex sees one hexagon edge) and the hub 13.
    No frame vertex sees both ends of a triangle edge, so the frame offers
    no other crossing for it.
    """
    es = [(0, 1), (1, 2), (0, 2), (3, 0), (3, 1), (3, 2)]
    for i in range(3):
        x, y = [j for j in range(3) if j != i]
        es += [(3, 4 + i), (4 + i, x), (4 + i, y)]
    hexagon = [0, 6, 1, 4, 2, 5]
    ring = list(range(7, 13))
    for i in range(6):
        es += [(ring[i], hexagon[i]), (ring[i], hexagon[(i + 1) % 6]), (ring[i], ring[(i + 1) % 6]), (13, ring[i])]
    return _graph(14, es)


def complete(n: int) -> Graph:
    return complete_graph(n)


def k5_minus_edge() -> Graph:
    return _graph(5, [e for e in combinations(range(5), 2) if e != (3, 4)])


FAMILIES = {
    "complete": lambda n=5: complete_graph(int(n)),
    "k5-minus-edge": lambda: k5_minus_edge(),
    "cube": lambda: cube(),
    "optimal-q3": lambda: gen_optimal_1planar(cube()),
    "optimal-pdw": lambda k=4: gen_optimal_1planar(pseudo_double_wheel(int(k))),
    "optimal-cylinder": lambda rings=3, length=4: gen_optimal_1planar(cylinder_quadrangulation(int(rings), int(length))),
    "k5-star": lambda k=3: gen_k5_star(int(k)),
    "kite-tetrahedron": lambda refine=1: kite_covered_tetrahedron(bool(int(refine))),
    "k2222": lambda: k2222(),
    "octahedron": lambda: octahedron(),
    "sc": lambda: sc_graph(),
    "triangulation": lambda n=10, seed=0: random_triangulation(int(n), int(seed)),
    "random-1p": lambda n=10, kites=3, seed=0, discipline="1p": random_triangulated_1planar(int(n), int(kites), int(seed), discipline),
}


def generate(family: str, *params) -> Graph:
    if family not in FAMILIES:
        raise ValueError(f"unknown family {family!r}; known: {', '.join(sorted(FAMILIES))}")
    return FAMILIES[family](*params)
