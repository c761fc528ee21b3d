"""Detection of the structures that drive the recognition loop.

Kinds are searched in a fixed priority order; within a kind the candidate
with the smallest key wins.  All functions work on a mutable adjacency
``dict[int, set[int]]`` plus a coloring view answering ``edge in view``
and ``view.get(edge)``.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass, field
from itertools import combinations
from typing import Iterable, Iterator, Mapping

from .coloring import Color
from .graph import Edge, edge

SEP3 = "sep3cycle"
SEPEDGE = "sepedge"
SEP4 = "sep4cycle"
TRIPLE = "septriple"
QUAD = "sepquadruple"
TRIANGLE = "septriangle"
K5 = "k5"
MC4 = "mc4"
ORDER = (SEP3, SEPEDGE, SEP4, TRIPLE, QUAD, TRIANGLE)

RICEBALL = "kite_covered_tetrahedron"
SC = "sc_graph"
KITE = "plain_kite"

Adj = Mapping[int, set[int]]


@dataclass
class Gadget:
    kind: str
    key: tuple
    cycle: tuple[int, ...] = ()
    ab: Edge | None = None
    bc: Edge | None = None
    cross_ab: tuple[Edge, ...] = ()
    cross_bc: tuple[Edge, ...] = ()
    removed: frozenset = frozenset()
    cut: frozenset = frozenset()


@dataclass
class MC4Reading:
    """One way to embed a detected K4: a list of (red, blue) crossing pairs."""

    kind: str
    k4: tuple[int, int, int, int]
    pairs: list[tuple[Edge, Edge]] = field(default_factory=list)
    center: int | None = None


# ---------------------------------------------------------------------------
# connectivity


def separates(adj: Adj, removed: Iterable[int], cut: Iterable[Edge] = ()) -> bool:
    """True iff ``G - removed - cut`` is disconnected (``G`` connected).

    Every component of the rest touches a neighbour of ``removed`` or an
    endpoint of a cut edge.  Those seeds grow breadth-first in lockstep and
    merge when they meet, so the cost stays near the smaller side.
    """
    removed = set(removed)
    cut = {edge(*e) for e in cut}
    seeds = {w for s in removed for w in adj[s] if w not in removed}
    seeds |= {v for e in cut for v in e if v not in removed}
    if len(seeds) <= 1:
        return len(adj) - len(removed) > len(seeds) if not seeds else False
    parent: dict[int, int] = {}

    def find(x: int) -> int:
        root = x
        while parent[root] != root:
            root = parent[root]
        while parent[x] != root:
            parent[x], x = root, parent[x]
        return root

    owner: dict[int, int] = {}
    queues: dict[int, deque] = {}
    for s in sorted(seeds):
        parent[s] = s
        owner[s] = s
        queues[s] = deque([s])
    roots = len(seeds)

    def union(x: int, y: int) -> int:
        nonlocal roots
        rx, ry = find(x), find(y)
        if rx == ry:
            return rx
        if len(queues[rx]) < len(queues[ry]):
            rx, ry = ry, rx
        parent[ry] = rx
        queues[rx].extend(queues.pop(ry))
        roots -= 1
        return rx

    def blocked(u: int, w: int) -> bool:
        return w in removed or (cut and (u, w) in cut if u < w else (w, u) in cut)

    # seeds adjacent to each other merge without search
    for s in sorted(seeds):
        for w in adj[s]:
            if w in owner and not blocked(s, w):
                union(s, w)
    while roots > 1:
        progressed = False
        for r in list(queues):
            if r not in queues or find(r) != r:
                continue
            q = queues[r]
            if not q:
                return True
            u = q.popleft()
            progressed = True
            for w in adj[u]:
                if blocked(u, w):
                    continue
                o = owner.get(w)
                if o is None:
                    owner[w] = u
                    parent[w] = find(u)
                    queues[find(u)].append(w)
                elif find(o) != find(u):
                    union(o, u)
                    if roots == 1:
                        return False
        if not progressed:  # pragma: no cover - defensive
            return True
    return False


def components(adj: Adj, removed: Iterable[int], cut: Iterable[Edge] = ()) -> list[set[int]]:
    removed = set(removed)
    cut = {edge(*e) for e in cut}
    seen: set[int] = set()
    out = []
    for v in sorted(adj):
        if v in removed or v in seen:
            continue
        comp = {v}
        stack = [v]
        seen.add(v)
        while stack:
            u = stack.pop()
            for w in adj[u]:
                if w in removed or w in seen or edge(u, w) in cut:
                    continue
                seen.add(w)
                comp.add(w)
                stack.append(w)
        out.append(comp)
    return out


def smallest_side(adj: Adj, removed: Iterable[int]) -> set[int] | None:
    """The first component of ``G - removed`` to be exhausted by lockstep search.

    Costs about the number of components times the size of the returned
    one, which keeps repeated carving near-linear overall.  None when the
    rest is connected.
    """
    removed = set(removed)
    seeds = sorted({w for s in removed for w in adj[s] if w not in removed})
    owner: dict[int, int] = {}
    members: dict[int, list[int]] = {}
    queues: dict[int, deque] = {}
    parent: dict[int, int] = {}

    def find(x: int) -> int:
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for s in seeds:
        if s in owner:
            continue
        parent[s] = s
        owner[s] = s
        members[s] = [s]
        queues[s] = deque([s])
    if len(queues) <= 1:
        return None

    def union(x: int, y: int) -> None:
        rx, ry = find(x), find(y)
        if rx == ry:
            return
        if len(members[rx]) < len(members[ry]):
            rx, ry = ry, rx
        parent[ry] = rx
        members[rx].extend(members.pop(ry))
        queues[rx].extend(queues.pop(ry))

    while len(queues) > 1:
        for r in list(queues):
            if r not in queues:
                continue
            q = queues[r]
            if not q:
                return set(members[r])
            u = q.popleft()
            for w in adj[u]:
                if w in removed:
                    continue
                o = owner.get(w)
                if o is None:
                    owner[w] = w
                    parent[w] = w
                    root = find(u)
                    parent[w] = root
                    members[root].append(w)
                    q.append(w)
                elif find(o) != find(u):
                    union(o, u)
                    q = queues[find(u)]
    return None


# ---------------------------------------------------------------------------
# local structure


def common(adj: Adj, a: int, b: int) -> set[int]:
    return adj[a] & adj[b]


def crossable(adj: Adj, colors, a: int, b: int) -> list[Edge]:
    """C[a, b] as a sorted list (``{a, b}`` itself may be colored)."""
    cn = adj[a] & adj[b]
    out = []
    for x in cn:
        for y in adj[x] & cn:
            if x < y and (x, y) not in colors:
                out.append((x, y))
    out.sort()
    return out


def is_uncolored(colors, e: Edge) -> bool:
    return e not in colors


def iter_triangles(adj: Adj, vertices: Iterable[int] | None = None) -> Iterator[tuple[int, int, int]]:
    """Triangles as sorted triples; with ``vertices`` only those touching it."""
    if vertices is None:
        for a in sorted(adj):
            for b in sorted(w for w in adj[a] if w > a):
                for c in sorted(w for w in adj[a] & adj[b] if w > b):
                    yield (a, b, c)
        return
    seen = set()
    for v in vertices:
        if v not in adj:
            continue
        for x, y in combinations(sorted(adj[v]), 2):
            if y in adj[x]:
                t = tuple(sorted((v, x, y)))
                if t not in seen:
                    seen.add(t)
                    yield t


def canonical_cycle(c: tuple[int, ...]) -> tuple[int, ...]:
    k = len(c)
    i = c.index(min(c))
    fwd = tuple(c[(i + j) % k] for j in range(k))
    bwd = tuple(c[(i - j) % k] for j in range(k))
    return min(fwd, bwd)


def iter_4cycles(adj: Adj, vertices: Iterable[int] | None = None) -> Iterator[tuple[int, int, int, int]]:
    """4-cycles ``(a, b, c, d)`` with ``a`` minimal and ``b < d``."""
    if vertices is None:
        for a in sorted(adj):
            nb = sorted(w for w in adj[a] if w > a)
            for b, d in combinations(nb, 2):
                for c in sorted(adj[b] & adj[d]):
                    if c > a and c != b and c != d:
                        yield (a, b, c, d)
        return
    seen = set()
    for v in vertices:
        if v not in adj:
            continue
        # v at position 0 or 1 of some rotation of the cycle
        for x, y in combinations(sorted(adj[v]), 2):
            for z in adj[x] & adj[y]:
                if z != v:
                    cyc = canonical_cycle((v, x, z, y))
                    if cyc not in seen:
                        seen.add(cyc)
                        yield cyc


def cycle_edges(cyc: tuple[int, ...]) -> list[Edge]:
    return [edge(cyc[i], cyc[(i + 1) % len(cyc)]) for i in range(len(cyc))]


# ---------------------------------------------------------------------------
# per-kind checks; each returns a Gadget or None


def check_sep3(adj: Adj, colors, tri: tuple[int, int, int]) -> Gadget | None:
    a, b, c = tri
    if b not in adj[a] or c not in adj[a] or c not in adj[b]:
        return None
    if separates(adj, tri):
        return Gadget(SEP3, tri, cycle=tri, removed=frozenset(tri))
    return None


def check_sepedge(adj: Adj, colors, e: Edge) -> Gadget | None:
    a, b = e
    if b not in adj[a] or e in colors:
        return None
    cr = crossable(adj, colors, a, b)
    if cr and separates(adj, e, cr):
        comps = components(adj, e, cr)
        side = {}
        for i, comp in enumerate(comps):
            for v in comp:
                side[v] = i
        # a lone vertex cut off by C[a, b] is no side of its own: its edges may
        # cross elsewhere, so it joins every side it reaches
        group = list(range(len(comps)))

        def find(i: int) -> int:
            while group[i] != i:
                group[i] = group[group[i]]
                i = group[i]
            return i

        for comp in comps:
            if len(comp) == 1:
                (v,) = comp
                for x, y in cr:
                    if v in (x, y):
                        group[find(side[y if x == v else x])] = find(side[v])
        if len({find(side[v]) for comp in comps if len(comp) > 1 for v in comp}) < 2:
            return None
        # only crossable edges joining two sides can cross {a, b}
        spanning = tuple(xy for xy in cr if find(side[xy[0]]) != find(side[xy[1]]))
        if not spanning:
            return None
        return Gadget(SEPEDGE, e, ab=e, cross_ab=spanning, removed=frozenset(e), cut=frozenset(cr))
    return None


def _is_cycle(adj: Adj, cyc: tuple[int, ...]) -> bool:
    return all(cyc[(i + 1) % len(cyc)] in adj[cyc[i]] for i in range(len(cyc)))


def check_sep4(adj: Adj, colors, cyc: tuple[int, int, int, int]) -> Gadget | None:
    if not _is_cycle(adj, cyc):
        return None
    if separates(adj, cyc):
        return Gadget(SEP4, cyc, cycle=cyc, removed=frozenset(cyc))
    return None


def _single_crossable(adj: Adj, colors, a: int, b: int) -> Edge | None:
    e = edge(a, b)
    if e in colors:
        return None
    cr = crossable(adj, colors, a, b)
    return cr[0] if len(cr) == 1 else None


def check_triple(adj: Adj, colors, key: tuple) -> Gadget | None:
    tri, (a, b) = key
    if not _is_cycle(adj, tri):
        return None
    uv = _single_crossable(adj, colors, a, b)
    if uv is None:
        return None
    (c,) = set(tri) - {a, b}
    if separates(adj, tri, [uv]):
        return Gadget(TRIPLE, key, cycle=(a, b, c), ab=edge(a, b), cross_ab=(uv,), removed=frozenset(tri), cut=frozenset([uv]))
    return None


def check_quad(adj: Adj, colors, key: tuple) -> Gadget | None:
    cyc, (a, b, c, d) = key
    if not _is_cycle(adj, cyc):
        return None
    xy = _single_crossable(adj, colors, a, b)
    if xy is None:
        return None
    if separates(adj, cyc, [xy]):
        return Gadget(QUAD, key, cycle=(a, b, c, d), ab=edge(a, b), cross_ab=(xy,), removed=frozenset(cyc), cut=frozenset([xy]))
    return None


def check_triangle(adj: Adj, colors, key: tuple) -> Gadget | None:
    tri, (a, b, c) = key
    if not _is_cycle(adj, tri):
        return None
    uv = _single_crossable(adj, colors, a, b)
    if uv is None:
        return None
    xy = _single_crossable(adj, colors, b, c)
    if xy is None or xy == uv:
        return None
    if separates(adj, tri, [uv, xy]):
        return Gadget(
            TRIANGLE, key, cycle=(a, b, c), ab=edge(a, b), bc=edge(b, c),
            cross_ab=(uv,), cross_bc=(xy,), removed=frozenset(tri), cut=frozenset([uv, xy]),
        )
    return None


CHECKS = {
    SEP3: check_sep3,
    SEPEDGE: check_sepedge,
    SEP4: check_sep4,
    TRIPLE: check_triple,
    QUAD: check_quad,
    TRIANGLE: check_triangle,
}


def _triple_keys(tri):
    a, b, c = tri
    return [(tri, (a, b)), (tri, (a, c)), (tri, (b, c))]


def _quad_keys(cyc):
    # one rotation per cycle edge; the role of a and b is symmetric
    return sorted((cyc, tuple(cyc[(i + j) % 4] for j in range(4))) for i in range(4))


def _triangle_keys(tri):
    a, b, c = tri
    # the middle vertex is shared by the two kite-covered edges
    return [(tri, (b, a, c)), (tri, (a, b, c)), (tri, (a, c, b))]


def candidate_keys(kind: str, adj: Adj, vertices: Iterable[int] | None = None) -> Iterator:
    """Candidates of one kind (touching ``vertices`` when given)."""
    if kind in (SEP3, TRIPLE, TRIANGLE):
        for tri in iter_triangles(adj, vertices):
            if kind == SEP3:
                yield tri
            elif kind == TRIPLE:
                yield from _triple_keys(tri)
            else:
                yield from _triangle_keys(tri)
    elif kind in (SEP4, QUAD):
        for cyc in iter_4cycles(adj, vertices):
            if kind == SEP4:
                yield cyc
            else:
                yield from _quad_keys(cyc)
    elif kind == SEPEDGE:
        if vertices is None:
            for a in sorted(adj):
                for b in sorted(w for w in adj[a] if w > a):
                    yield (a, b)
        else:
            seen = set()
            for v in vertices:
                if v in adj:
                    for w in adj[v]:
                        e = edge(v, w)
                        if e not in seen:
                            seen.add(e)
                            yield e
    else:
        raise ValueError(kind)


def next_gadget(adj: Adj, colors) -> Gadget | None:
    """First applicable separating gadget in priority order (full scan)."""
    for kind in ORDER:
        best = None
        for key in sorted(candidate_keys(kind, adj)):
            g = CHECKS[kind](adj, colors, key)
            if g is not None:
                best = g
                break
        if best is not None:
            return best
    return None


# ---------------------------------------------------------------------------
# cliques


def k4s_touching(adj: Adj, vertices: Iterable[int]) -> set[tuple[int, int, int, int]]:
    out = set()
    for v in vertices:
        if v not in adj:
            continue
        nb = adj[v]
        for x in nb:
            for y in nb & adj[x]:
                if y <= x:
                    continue
                for z in nb & adj[x] & adj[y]:
                    if z > y:
                        out.add(tuple(sorted((v, x, y, z))))
    return out


def all_k4(adj: Adj) -> list[tuple[int, int, int, int]]:
    out = set()
    for a in adj:
        for b in adj[a]:
            if b <= a:
                continue
            cn = adj[a] & adj[b]
            for c in cn:
                if c <= b:
                    continue
                for d in cn & adj[c]:
                    if d > c:
                        out.add((a, b, c, d))
    return sorted(out)


def find_k5(adj: Adj) -> tuple[int, ...] | None:
    """Smallest 5-clique in lexicographic order, or None."""
    for a in sorted(adj):
        nb = sorted(w for w in adj[a] if w > a)
        for b in nb:
            cb = [w for w in nb if w > b and w in adj[b]]
            for c in cb:
                cc = [w for w in cb if w > c and w in adj[c]]
                for d in cc:
                    for e in cc:
                        if e > d and e in adj[d]:
                            return (a, b, c, d, e)
    return None


def k5s_touching(adj: Adj, vertices: Iterable[int]) -> set[tuple[int, ...]]:
    out = set()
    for k in k4s_touching(adj, vertices):
        cn = set.intersection(*(adj[v] for v in k))
        for w in cn:
            out.add(tuple(sorted(k + (w,))))
    return out


# ---------------------------------------------------------------------------
# MC4 readings


_CROSS_FORBIDDEN = {Color.BLACK, Color.GREY, Color.BLUE, Color.CYAN, Color.ORANGE, Color.RED}
_BOUNDARY_FORBIDDEN = {Color.RED, Color.BLUE, Color.ORANGE}


def _pair_ok(adj: Adj, colors, e: Edge, f: Edge) -> bool:
    """Can ``e`` and ``f`` cross inside the kite on their four endpoints?"""
    (a, b), (c, d) = e, f
    if len({a, b, c, d}) != 4:
        return False
    for x, y in (e, f):
        if y not in adj[x] or colors.get(edge(x, y)) in _CROSS_FORBIDDEN:
            return False
    for x in (a, b):
        for y in (c, d):
            if y not in adj[x] or colors.get(edge(x, y)) in _BOUNDARY_FORBIDDEN:
                return False
    return True


def _pairs_disjoint(pairs: list[tuple[Edge, Edge]]) -> bool:
    crossed = [e for p in pairs for e in p]
    if len(set(crossed)) != len(crossed):
        return False
    boundary = set()
    for (a, b), (c, d) in pairs:
        boundary |= {edge(x, y) for x in (a, b) for y in (c, d)}
    return not (boundary & set(crossed))


def riceball_readings(adj: Adj, colors, k4) -> list[MC4Reading]:
    """All six edges of the tetrahedron crossed.

    Edge ``xy`` lies between the faces ``xyz`` and ``xyw``; its crosser
    ``pq`` puts ``p`` into the region of one face and ``q`` into the other.
    The three vertices a face region receives must be equal or pairwise
    adjacent, and different regions receive different vertices.  With one
    vertex per region this is the 8-vertex ball around a tetrahedron.
    """
    k4 = tuple(k4)
    faces = [frozenset(f) for f in combinations(k4, 3)]
    tedges = list(combinations(k4, 2))
    options = []
    for x, y in tedges:
        f1, f2 = [f for f in faces if x in f and y in f]
        cn = sorted((adj[x] & adj[y]) - set(k4))
        opts = []
        for p in cn:
            for q in cn:
                if q != p and q in adj[p] and _pair_ok(adj, colors, edge(x, y), edge(p, q)):
                    opts.append(((f1, p), (f2, q)))
        if not opts:
            return []
        options.append(opts)
    out = []
    seen: set = set()
    region: dict[frozenset, list[int]] = {f: [] for f in faces}
    owner: dict[int, frozenset] = {}

    def fits(f: frozenset, v: int) -> bool:
        if owner.get(v, f) != f:
            return False
        return all(u == v or u in adj[v] for u in region[f])

    def place(f: frozenset, v: int) -> None:
        region[f].append(v)
        owner[v] = f

    def unplace(f: frozenset, v: int) -> None:
        region[f].pop()
        if v not in region[f]:
            del owner[v]

    def pick(i: int, pairs: list) -> None:
        if len(out) >= 4:
            return
        if i == len(tedges):
            key = frozenset(pairs)
            if key not in seen and _pairs_disjoint(pairs):
                seen.add(key)
                out.append(MC4Reading(RICEBALL, k4, list(pairs)))
            return
        x, y = tedges[i]
        for (f1, p), (f2, q) in options[i]:
            if fits(f1, p):
                place(f1, p)
                if fits(f2, q):
                    place(f2, q)
                    pairs.append((edge(x, y), edge(p, q)))
                    pick(i + 1, pairs)
                    pairs.pop()
                    unplace(f2, q)
                unplace(f1, p)

    pick(0, [])
    return out


def sc_readings(adj: Adj, colors, k4) -> list[MC4Reading]:
    """Center ``d`` of degree six, spokes planar, each triangle edge crossed by an edge at ``d``."""
    out = []
    for d in k4:
        if len(adj[d]) != 6:
            continue
        tri = [v for v in k4 if v != d]
        pairs = []
        used = set()
        ok = True
        for x, y in combinations(tri, 2):
            cand = sorted((adj[x] & adj[y] & adj[d]) - set(k4) - used)
            good = [f for f in cand if _pair_ok(adj, colors, edge(d, f), edge(x, y))]
            if len(good) != 1:
                ok = False
                break
            used.add(good[0])
            pairs.append((edge(d, good[0]), edge(x, y)))
        if ok and _pairs_disjoint(pairs) and set(adj[d]) == set(tri) | used:
            out.append(MC4Reading(SC, tuple(k4), pairs, center=d))
    return out


def kite_readings(adj: Adj, colors, k4) -> list[MC4Reading]:
    a, b, c, d = k4
    out = []
    for e, f in (((a, b), (c, d)), ((a, c), (b, d)), ((a, d), (b, c))):
        if _pair_ok(adj, colors, e, f):
            out.append(MC4Reading(KITE, tuple(k4), [(e, f)]))
    # fewer extra common neighbours first: a kite's crossing edges usually have none
    out.sort(key=lambda r: sum(len(adj[x] & adj[y]) for x, y in r.pairs[0]))
    return out


def classify_mc4(adj: Adj, colors, k4) -> list[MC4Reading]:
    """Consistent readings of a K4 in the order riceball, SC, plain kite."""
    k4 = tuple(sorted(k4))
    return riceball_readings(adj, colors, k4) + sc_readings(adj, colors, k4) + kite_readings(adj, colors, k4)
