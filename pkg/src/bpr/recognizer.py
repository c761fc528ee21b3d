"""Recognition of triangulated 1-planar, IC-planar and NIC-planar graphs.

One *run* reduces the input by gadgets until every part is small or
planar, recording an edge coloring and a certificate (a list of formula
blocks).  A run that must guess (the reading of an MC4 K4, or the layout
of a separating 4-cycle) logs the choice; failed runs are retried with
other choices, fewest deviations first, up to a budget.  Acceptance always requires a witness embedding assembled from
the certificate that validates against the input graph.
"""

from __future__ import annotations

import logging
import heapq
import time
from dataclasses import dataclass, field
from itertools import combinations
from typing import Iterable, Mapping

from .coloring import Color, ColoringConflict, EdgeColoring
from .engine import Part, PartColors
from .formula import (
    IC,
    NIC,
    ONE_PLANAR,
    Block,
    Certificate,
    Kite,
    ThirdOccurrence,
    check_mode,
    ic_satisfiable,
    nic_occurrences,
    nic_satisfiable,
    select_kites,
    small_block_is_2cnf,
)
from .gadgets import (
    K5,
    MC4,
    QUAD,
    RICEBALL,
    SC,
    SEP3,
    SEP4,
    SEPEDGE,
    TRIANGLE,
    TRIPLE,
    Gadget,
    classify_mc4,
    cycle_edges,
    smallest_side,
)
from .graph import Edge, Graph, articulation_points, connected_components, edge, is_k_connected, is_planar
from .oracle import Constraints, EmbeddingRejected, Embedding, has_embedding, small_graph_block, validate_embedding

log = logging.getLogger("bpr")

# failure reasons
EDGE_BOUND = "edge_bound"
CONFLICT = "coloring_conflict"
K5_BRANCH = "k5_branch"
MC4_MISMATCH = "mc4_mismatch"
SMALL_FAIL = "small_graph_fail"
SAT_FAIL = "sat_fail"
CONNECTIVITY = "connectivity"
REASONS = (EDGE_BOUND, CONFLICT, K5_BRANCH, MC4_MISMATCH, SMALL_FAIL, SAT_FAIL, CONNECTIVITY)

SMALL = 8  # parts up to this size go to the embedding oracle


class Rejected(Exception):
    def __init__(self, reason: str, detail: str = ""):
        super().__init__(f"{reason}: {detail}" if detail else reason)
        self.reason = reason
        self.detail = detail


def max_edges(mode: str, n: int) -> int:
    """Density bound of the class; complete graphs below three vertices."""
    mode = check_mode(mode)
    if n < 3:
        return n * (n - 1) // 2
    if mode == ONE_PLANAR:
        return 4 * n - 8
    if mode == IC:
        return 13 * n // 4 - 6
    return 18 * (n - 2) // 5


@dataclass
class RecognitionResult:
    accepted: bool
    mode: str
    coloring: EdgeColoring = field(default_factory=EdgeColoring)
    certificate: Certificate | None = None
    satisfiable: bool | None = None
    witness: Embedding | None = None
    reason: str | None = None
    detail: str = ""
    trace: list = field(default_factory=list)
    stats: dict = field(default_factory=dict)

    def formula(self):
        from .formula import TRUE

        return self.certificate.formula() if self.certificate is not None else TRUE

    def to_json(self) -> dict:
        from .formula import to_sexpr

        return {
            "accepted": self.accepted,
            "mode": self.mode,
            "reason": self.reason,
            "detail": self.detail,
            "coloring": self.coloring.to_json(),
            "formula": to_sexpr(self.formula()),
            "satisfiable": self.satisfiable,
            "witness": self.witness.to_json() if self.witness is not None else None,
            "stats": self.stats,
        }


# ---------------------------------------------------------------------------
# one run


class _Run:
    def __init__(self, adj: Mapping[int, set[int]], mode: str, forced: list[int],
                 precolored: EdgeColoring | None, incremental: bool, first_id: int = 1):
        self.mode = mode
        self.adj = {v: set(ns) for v, ns in adj.items()}
        self.coloring = precolored.copy() if precolored is not None else EdgeColoring()
        self.cert = Certificate(mode, next_id=first_id)
        self.forced = forced
        self.choices: list[tuple[int, int]] = []
        self.incremental = incremental
        self.trace: list[tuple] = []
        self.used_vertices: set[int] = set()
        self.used_edges: set[Edge] = set()
        self.steps = 0
        self.checks = 0
        self.step_bound = sum(len(s) for s in adj.values()) // 2 + len(adj) + 10

    # -- bookkeeping ---------------------------------------------------
    def _choose(self, count: int) -> int:
        i = len(self.choices)
        pick = self.forced[i] if i < len(self.forced) else 0
        self.choices.append((pick, count))
        return pick

    def _new_id(self) -> int:
        i = self.cert.next_id
        self.cert.next_id += 1
        return i

    def _use(self, kites: Iterable[Kite]) -> None:
        for k in kites:
            self.used_vertices.update(k.vertices)
            self.used_edges.update(k.planar_edges)

    def _kite(self, part: Part, red: Edge, blue: Edge, source: str) -> Kite:
        c = part.colors
        c.extend(red, Color.RED)
        c.extend(blue, Color.BLUE)
        k = self.cert.new_kite(red, blue)
        c.extend_many(k.planar_edges, Color.BLACK)
        self.cert.add_alpha(k, source)
        self._use([k])
        return k

    # -- driver --------------------------------------------------------
    def execute(self) -> None:
        root = Part(self.adj, PartColors(self.coloring), incremental=self.incremental)
        work = [root]
        while work:
            part = work.pop()
            self._reduce(part, work)
            self.checks += part.cache.checks

    def _reduce(self, part: Part, work: list[Part]) -> None:
        while part.n > SMALL and part.has_k4():
            self.steps += 1
            if self.steps > self.step_bound:
                raise AssertionError("recognition loop exceeded its step bound")
            g = part.cache.next_gadget()
            if g is not None:
                self.trace.append((g.kind, g.key))
                self._apply(part, g, work)
                continue
            k5 = part.cache.k5()
            if k5 is not None:
                self.trace.append((K5, k5))
                raise Rejected(K5_BRANCH, f"K5 on {list(k5)}")
            if not self._mc4(part):
                break
        self._final_check(part)

    # -- gadgets -------------------------------------------------------
    def _apply(self, part: Part, g: Gadget, work: list[Part]) -> None:
        c = part.colors
        if g.kind == SEP3:
            self._split(part, g.cycle, None, work)
        elif g.kind == SEP4:
            self._split(part, *self._sep4_layout(part, g.cycle), work)
        elif g.kind == SEPEDGE:
            a, b = g.ab
            c.extend(g.ab, Color.ORANGE)
            kites = []
            rims = []
            for xy in g.cross_ab:
                x, y = xy
                c.extend(xy, Color.CYAN)
                rims.append({edge(a, x), edge(x, b), edge(b, y), edge(a, y)})
                kites.append(self.cert.new_kite(g.ab, xy))
            c.extend_many(sorted(set.intersection(*rims)), Color.BLACK)
            self.cert.add(Block("sigma", [(k,) for k in kites], "separating edge", anchor=g.ab))
            self._use(kites)
            part.remove_edge(g.ab)
        elif g.kind in (TRIPLE, QUAD):
            (uv,) = g.cross_ab
            self._kite(part, g.ab, uv, g.kind)
            c.extend_many([e for e in cycle_edges(g.cycle) if e != g.ab], Color.BLACK)
            part.remove_edge(g.ab)
        elif g.kind == TRIANGLE:
            if self.mode == IC:
                raise Rejected(MC4_MISMATCH, f"separating triangle {list(g.cycle)} is not IC-planar")
            (uv,), (xy,) = g.cross_ab, g.cross_bc
            self._kite(part, g.ab, uv, g.kind)
            self._kite(part, g.bc, xy, g.kind)
            a, b, cc = g.cycle
            c.extend(edge(cc, a), Color.BLACK)
            part.remove_edge(g.ab)
            part.remove_edge(g.bc)
        else:  # pragma: no cover
            raise ValueError(g.kind)

    def _sep4_layout(self, part: Part, cycle: tuple[int, ...]) -> tuple[tuple[int, ...], dict[Edge, str]]:
        """Picks the planar 4-cycle and the side of each present diagonal.

        A separating K4 has three 4-cycles, any of which may be the planar
        one.  A diagonal is crossed on its side, or the triangle it closes
        would separate first, so a K4 through it must reach that side; two
        diagonals lie on opposite sides.  Layouts with this evidence come
        first, and the run branches over them.
        """
        a, b, cc, d = cycle
        cycles = [cycle]
        if cc in part.adj[a] and d in part.adj[b]:
            cycles = [(a, b, cc, d), (a, b, d, cc), (a, cc, b, d)]
        crossed = (Color.RED, Color.BLUE, Color.ORANGE)
        cycles = [cyc for cyc in cycles if all(part.colors.get(e) not in crossed for e in cycle_edges(cyc))] or [cycle]
        inner = smallest_side(part.adj, cycle)
        good, fallback = [], []
        for cyc in cycles:
            present = [e for e in (edge(cyc[0], cyc[2]), edge(cyc[1], cyc[3])) if e[1] in part.adj[e[0]]]
            if not present:
                good.append((cyc, {}))
                continue
            ev = {e: _k4_sides(part.adj, e, inner, cyc) for e in present}
            for first in ("in", "out"):
                sides = dict(zip(present, (first, "out" if first == "in" else "in")))
                (good if all(sides[e] in ev[e] for e in present) else fallback).append((cyc, sides))
        if len(good) > 1 and len(inner) + 4 <= SMALL:
            # the inside goes straight to the final check; drop layouts it would refuse
            good = [lay for lay in good if self._inside_ok(part, inner, *lay)] or good[:1]
        if not good:
            cyc = cycles[0]
            present = [e for e in (edge(cyc[0], cyc[2]), edge(cyc[1], cyc[3])) if e[1] in part.adj[e[0]]]
            first = _diagonal_sides(part.adj, present[0], inner, cyc)[0]
            good = [(cyc, dict(zip(present, (first, "out" if first == "in" else "in"))))]
            good += [x for x in fallback if x != good[0]]
        return good[self._choose(len(good))] if len(good) > 1 else good[0]

    def _inside_ok(self, part: Part, inner: set[int], cyc: tuple[int, ...], sides: dict[Edge, str]) -> bool:
        drop_in, _, e_in, _ = _chords(cyc, sides)
        keep = inner | set(cyc)
        drop = set(drop_in)
        adj = {v: {w for w in part.adj[v] if w in keep and edge(v, w) not in drop} for v in keep}
        adj[e_in[0]].add(e_in[1])
        adj[e_in[1]].add(e_in[0])
        planar = set(cycle_edges(cyc)) | {e_in}
        for v in adj:
            for w in adj[v]:
                e = edge(v, w)
                if e in part.colors.virtual or e in part.boundary_edges or part.colors.get(e) in (Color.BLACK, Color.BLUE):
                    planar.add(e)
        return has_embedding(adj, Constraints(frozenset(planar)), ONE_PLANAR)

    def _split(self, part: Part, cycle: tuple[int, ...], sides: dict[Edge, str] | None, work: list[Part]) -> None:
        c = part.colors
        ring = cycle_edges(cycle)
        c.extend_many(ring, Color.BLACK)
        inner = smallest_side(part.adj, cycle)
        if inner is None:  # pragma: no cover - the gadget check guarantees a split
            raise AssertionError(f"cycle {cycle} does not separate")
        drop_in: list[Edge] = []
        drop_out: list[Edge] = []
        if len(cycle) == 4:
            drop_in, drop_out, e_in, f_out = _chords(cycle, sides)
        sub = part.subpart(inner | set(cycle), drop=drop_in)
        sub.boundary |= set(cycle)
        sub.boundary_edges |= set(ring)
        if len(cycle) == 4 and e_in not in sub.colors.virtual and e_in[1] not in sub.adj[e_in[0]]:
            sub.add_virtual(e_in)
        part.remove_vertices(inner)
        for e in drop_out:
            part.remove_edge(e)
        if len(cycle) == 4 and f_out[1] not in part.adj[f_out[0]]:
            part.add_virtual(f_out)
        part.boundary |= set(cycle)
        part.boundary_edges |= set(ring)
        part.cache.on_carve(cycle)
        self.trace.append(("split", tuple(sorted(inner))))
        work.append(sub)

    # -- MC4 -----------------------------------------------------------
    def _mc4(self, part: Part) -> bool:
        cache = part.cache
        for q in cache.k4s():
            if q in cache.dead:
                continue
            readings = classify_mc4(part.adj, part.colors, q)
            if not readings:
                cache.dead.add(q)
                continue
            r = readings[self._choose(len(readings))]
            self.trace.append((MC4, r.kind, q))
            if r.kind == RICEBALL and self.mode == IC:
                raise Rejected(MC4_MISMATCH, f"kite-covered tetrahedron on {list(q)} is not IC-planar")
            if r.kind == SC and self.mode in (IC, NIC):
                raise Rejected(MC4_MISMATCH, f"SC-graph at {list(q)} is not {self.mode.upper()}-planar")
            for red, blue in r.pairs:
                self._kite(part, red, blue, r.kind)
            for red, _ in r.pairs:
                part.remove_edge(red)
            return True
        return False

    # -- final check ---------------------------------------------------
    def _final_check(self, part: Part) -> None:
        adj, n, m = part.adj, part.n, part.m
        c = part.colors
        if n <= 2 or (m == 3 * n - 6 and is_planar(adj)):
            for e in part.edges():
                c.extend(e, Color.BLACK)
            self.trace.append(("final", "planar", n))
            return
        if n > SMALL:
            raise Rejected(MC4_MISMATCH, f"{n}-vertex remainder is neither planar triangulated nor reducible")
        planar = {e for e in part.edges() if c.get(e) in (Color.BLACK, Color.BLUE)}
        planar |= part.colors.virtual | part.boundary_edges
        if self.mode == NIC:
            exposed = (part.boundary_edges | self.used_edges) & set(part.edges())
        else:
            exposed = (part.boundary | self.used_vertices) & set(adj)
        block = small_graph_block(adj, Constraints(frozenset(planar)), self.mode, new_id=self._new_id,
                                  exposed=exposed, source=f"small graph on {sorted(adj)}")
        if not block.alternatives:
            raise Rejected(SMALL_FAIL, f"no {self.mode} embedding of the remainder on {sorted(adj)}")
        self.cert.add(block)
        self._use(block.kites())
        for e in part.edges():
            if e not in c:
                c.extend(e, Color.GREY)
        self.trace.append(("final", "small", n))


def _chords(cycle: tuple[int, ...], sides: dict[Edge, str]) -> tuple[list[Edge], list[Edge], Edge, Edge]:
    """Diagonals dropped from each side and the chord closing each side."""
    a, b, c, d = cycle
    ac, bd = edge(a, c), edge(b, d)
    drop_in = [e for e, side in sides.items() if side != "in"]
    drop_out = [e for e, side in sides.items() if side == "in"]
    e_in = bd if sides.get(ac) == "in" else ac
    f_out = bd if sides.get(ac) == "out" else ac
    return drop_in, drop_out, e_in, f_out


def _side_of(inner: set[int], ring: set[int]):
    def side(p: int) -> str | None:
        if p in inner:
            return "in"
        return None if p in ring else "out"
    return side


def _k4_sides(adj: Mapping[int, set[int]], diag: Edge, inner: set[int], cycle: tuple[int, ...]) -> set[str]:
    """Sides of the cycle reached by a K4 through the diagonal."""
    x, z = diag
    cn = adj[x] & adj[z]
    side = _side_of(inner, set(cycle))
    return {w for w in ("in", "out")
            if any(side(p) == w and any(side(q) in (w, None) for q in cn & adj[p]) for p in cn)}


def _diagonal_sides(adj: Mapping[int, set[int]], diag: Edge, inner: set[int], cycle: tuple[int, ...]) -> list[str]:
    """Plausible sides for a diagonal, best first: K4 evidence, then a triangle, else inside."""
    k4 = _k4_sides(adj, diag, inner, cycle)
    if k4:
        return [w for w in ("in", "out") if w in k4]
    side = _side_of(inner, set(cycle))
    cn = adj[diag[0]] & adj[diag[1]]
    tri = [w for w in ("in", "out") if any(side(p) == w for p in cn)]
    return tri or ["in"]


# ---------------------------------------------------------------------------
# runs, retries and the witness


def _witness(adj, cert: Certificate, coloring: EdgeColoring, mode: str) -> Embedding:
    choice = select_kites(cert.blocks, mode)
    if choice is None:
        raise Rejected(SAT_FAIL, f"no {mode} selection of kites satisfies the certificate")
    pairs = [k.crossing for b, j in zip(cert.blocks, choice) for k in b.alternatives[j]]
    cons = Constraints.build({e: c for e, c in coloring.items() if c is not Color.GREY})
    try:
        return validate_embedding(adj, pairs, cons, mode)
    except EmbeddingRejected as exc:
        raise Rejected(SAT_FAIL, f"assembled witness rejected: {exc}") from exc


def _formula_verdict(cert: Certificate, mode: str, stats: dict) -> bool | None:
    if mode == ONE_PLANAR:
        return None
    if mode == IC:
        stats["small_blocks_2cnf"] = all(small_block_is_2cnf(b) for b in cert.blocks if b.kind == "small")
        return ic_satisfiable(cert)
    occ = nic_occurrences(cert)
    stats["max_edge_occurrences"] = max((len(k) for k in occ.values()), default=0)
    try:
        return nic_satisfiable(cert)
    except ThirdOccurrence as exc:
        stats["third_occurrence"] = str(exc)
        return None


def _one_run(adj, mode, forced, precolored, incremental, first_id) -> tuple[_Run, RecognitionResult]:
    run = _Run(adj, mode, forced, precolored, incremental, first_id)
    stats: dict = {}
    try:
        run.execute()
        witness = _witness(adj, run.cert, run.coloring, mode)
    except Rejected as exc:
        return run, RecognitionResult(False, mode, run.coloring, run.cert, None, None, exc.reason, exc.detail, run.trace, stats)
    except ColoringConflict as exc:
        return run, RecognitionResult(False, mode, run.coloring, run.cert, None, None, CONFLICT, str(exc), run.trace, stats)
    sat = _formula_verdict(run.cert, mode, stats)
    if sat is False:
        stats["formula_disagrees"] = True
        log.warning("formula reported unsatisfiable although a witness exists")
    return run, RecognitionResult(True, mode, run.coloring, run.cert, sat if sat is not None else True, witness, None, "", run.trace, stats)


def _core(adj, mode: str, precolored: EdgeColoring | None = None, incremental: bool = True,
          budget: int = 32, first_id: int = 1) -> RecognitionResult:
    """Runs with backtracking over MC4 readings and chord sides until one is accepted."""
    start = time.perf_counter()
    # limited discrepancy search: prefixes with fewer non-default picks first
    stack: list[tuple[int, int, list[int]]] = [(0, 0, [])]
    first: RecognitionResult | None = None
    runs = 0
    checks = 0
    while stack and runs < budget:
        _, _, prefix = heapq.heappop(stack)
        run, res = _one_run(adj, mode, prefix, precolored, incremental, first_id)
        runs += 1
        checks += run.checks
        log.debug("run %d choices=%s accepted=%s reason=%s steps=%d", runs, prefix, res.accepted, res.reason, len(res.trace))
        if res.accepted:
            first = res
            break
        if first is None:
            first = res
        taken = [p for p, _ in run.choices]
        for i in range(len(prefix), len(run.choices)):
            pick, count = run.choices[i]
            for alt in range(pick + 1, count):
                alt_prefix = taken[:i] + [alt]
                heapq.heappush(stack, (sum(1 for p in alt_prefix if p), i, alt_prefix))
    assert first is not None
    first.stats.update(runs=runs, gadget_checks=checks, seconds=round(time.perf_counter() - start, 6),
                       exhausted=not stack)
    if not first.accepted and stack:
        first.detail += f" (search budget of {budget} runs spent)"
    return first


def _adjacency(g) -> dict[int, set[int]]:
    if isinstance(g, Graph):
        return g.adjacency()
    return {v: set(ns) for v, ns in g.items()}


def recognize(g, mode: str = ONE_PLANAR, *, precolored: Mapping[Edge, Color] | EdgeColoring | None = None,
              decompose: bool = True, incremental: bool = True, budget: int = 32) -> RecognitionResult:
    """Decide triangulated 1-planarity (``1p``), IC- or NIC-planarity.

    3-connected inputs go through the reduction directly; others are split
    into 3-connected components first (see :func:`decompose_and_recognize`).
    ``precolored`` seeds the coloring, e.g. to force an edge planar.
    """
    mode = check_mode(mode)
    adj = _adjacency(g)
    n = len(adj)
    m = sum(len(s) for s in adj.values()) // 2
    pre = precolored if isinstance(precolored, EdgeColoring) else EdgeColoring(
        {edge(*e): Color(c) for e, c in (precolored or {}).items()})
    if m > max_edges(mode, n):
        return RecognitionResult(False, mode, pre.copy(), reason=EDGE_BOUND,
                                 detail=f"{m} edges exceed the bound {max_edges(mode, n)} for n={n}")
    if decompose and not is_k_connected(adj, 3):
        return decompose_and_recognize(adj, mode, precolored=pre, incremental=incremental, budget=budget)
    res = _core(adj, mode, pre, incremental, budget)
    if res.accepted:
        assert m <= max_edges(mode, n)
    log.info("mode=%s n=%d m=%d accepted=%s reason=%s", mode, n, m, res.accepted, res.reason)
    return res


# ---------------------------------------------------------------------------
# merging fragments and non-3-connected inputs


def merge(left: RecognitionResult, right: RecognitionResult, drop: Iterable[Edge] = (),
          shared: Iterable[Edge] = ()) -> RecognitionResult:
    """Combine two fragments: union of colorings, conjunction of certificates.

    ``drop`` names chords or virtual edges to forget.  An edge in ``shared``
    may legitimately be colored differently by the two sides (a separation
    pair edge); it becomes grey then.  Any other disagreement is a bug.
    """
    if not left.accepted:
        return left
    if not right.accepted:
        return right
    drop = {edge(*e) for e in drop}
    shared = {edge(*e) for e in shared}
    colors = {e: c for e, c in left.coloring.items() if e not in drop}
    for e, c in right.coloring.items():
        if e in drop:
            continue
        old = colors.get(e)
        if old is None or old is c:
            colors[e] = c
        elif old is Color.GREY or c is Color.GREY or e in shared:
            colors[e] = c if old is Color.GREY else old if c is Color.GREY else Color.GREY
        else:
            raise AssertionError(f"fragments disagree on {e}: {old.value} vs {c.value}")
    cert = (left.certificate or Certificate(left.mode)).merged(right.certificate or Certificate(right.mode))
    return RecognitionResult(True, left.mode, EdgeColoring(colors), cert, None, None, None, "",
                             left.trace + right.trace, {})


@dataclass
class Piece:
    """A component of the decomposition; ``virtual`` edges are not in the input."""

    adj: dict[int, set[int]]
    virtual: frozenset = frozenset()

    def edges(self) -> list[Edge]:
        return sorted((u, w) for u in self.adj for w in self.adj[u] if u < w)


def _induced(adj, verts, virtual, extra: Edge | None = None) -> Piece:
    sub = {v: {w for w in adj[v] if w in verts} for v in verts}
    virt = {e for e in virtual if e[0] in verts and e[1] in verts}
    if extra is not None:
        u, v = extra
        if v not in sub[u]:
            sub[u].add(v)
            sub[v].add(u)
            virt.add(extra)
    return Piece(sub, frozenset(virt))


def split_components(adj: Mapping[int, set[int]]) -> list[Piece]:
    """Split at cut vertices and separation pairs until pieces are 3-connected or tiny."""
    from .gadgets import components

    out: list[Piece] = []
    todo = [Piece({v: set(ns) for v, ns in adj.items()})]
    while todo:
        p = todo.pop()
        a = p.adj
        comps = components(a, ())
        if len(comps) > 1:
            todo.extend(_induced(a, c, p.virtual) for c in reversed(comps))
            continue
        if len(a) <= 3:
            out.append(p)
            continue
        cuts = articulation_points(a)
        if cuts:
            v = min(cuts)
            todo.extend(_induced(a, c | {v}, p.virtual) for c in reversed(components(a, {v})))
            continue
        pair = None
        for u in sorted(a):
            aps = articulation_points(a, (u,))
            if aps:
                pair = edge(u, min(aps))
                break
        if pair is None:
            out.append(p)
            continue
        u, v = pair
        todo.extend(_induced(a, c | {u, v}, p.virtual, pair) for c in reversed(components(a, {u, v})))
    out.sort(key=lambda q: sorted(q.adj))
    return out


def _trivial(piece: Piece, mode: str) -> RecognitionResult:
    return RecognitionResult(True, mode, EdgeColoring({e: Color.BLACK for e in piece.edges()}),
                             Certificate(mode), True, Embedding((), {}, mode))


def _needed(pieces: list[Piece], results: list[RecognitionResult], mode: str) -> dict:
    """Entities each component cannot do without: the exclusivity test between components."""
    where: dict = {}
    for i, p in enumerate(pieces):
        for v in p.adj:
            where.setdefault(v, set()).add(i)
    if mode == IC:
        entities = {v: ids for v, ids in where.items() if len(ids) > 1}
    else:
        entities = {}
        shared = sorted(v for v, ids in where.items() if len(ids) > 1)
        for u, v in combinations(shared, 2):
            ids = where[u] & where[v]
            if len(ids) > 1:
                entities[(u, v)] = ids
    out = {}
    for x, ids in sorted(entities.items()):
        need = [i for i in sorted(ids)
                if results[i].certificate is not None
                and select_kites(results[i].certificate.blocks, mode, forbidden={x}) is None]
        out[x] = need
    return out


def decompose_and_recognize(g, mode: str = ONE_PLANAR, *, precolored: EdgeColoring | None = None,
                            incremental: bool = True, budget: int = 32) -> RecognitionResult:
    """Recognize each 3-connected component; IC and NIC also need a joint kite choice.

    Components share cut vertices and separation pairs.  A shared vertex
    (IC) or pair edge (NIC) is *needed* by a component when forbidding it
    leaves that component unsatisfiable; being needed twice rejects.  The
    joint choice over all components decides, which also covers entities
    that are individually optional but jointly overbooked.
    """
    mode = check_mode(mode)
    adj = _adjacency(g)
    pieces = split_components(adj)
    results: list[RecognitionResult] = []
    next_id = 1
    for p in pieces:
        if len(p.adj) <= 3:
            res = _trivial(p, mode)
        else:
            pre = None
            if precolored is not None:
                pre = EdgeColoring({e: c for e, c in precolored.items() if e[0] in p.adj and e[1] in p.adj.get(e[0], ())})
            n, m = len(p.adj), len(p.edges())
            if m > max_edges(mode, n):
                res = RecognitionResult(False, mode, reason=EDGE_BOUND, detail=f"{m} edges exceed {max_edges(mode, n)}")
            else:
                res = _core(p.adj, mode, pre, incremental, budget, first_id=next_id)
                if res.certificate is not None:
                    next_id = res.certificate.next_id
        if not res.accepted:
            res.detail = f"component on {sorted(p.adj)}: {res.detail}"
            res.stats["components"] = len(pieces)
            return res
        results.append(res)
    virtual = {e for p in pieces for e in p.virtual}
    pair_edges = {e for p in pieces for e in p.edges() if e not in p.virtual and sum(e[0] in q.adj and e[1] in q.adj for q in pieces) > 1}
    total = results[0]
    for p, r in zip(pieces[1:], results[1:]):
        total = merge(total, r, drop=virtual, shared=pair_edges)
    total.coloring = EdgeColoring({e: c for e, c in total.coloring.items() if e not in virtual})
    stats: dict = {"components": len(pieces), "virtual_edges": len(virtual)}
    if mode == ONE_PLANAR:
        chosen = [r.witness for r in results]
    else:
        needed = _needed(pieces, results, mode)
        stats["needed"] = {str(x): ids for x, ids in needed.items() if ids}
        stats["needed_rule_rejects"] = any(len(ids) > 1 for ids in needed.values())
        choice = select_kites(total.certificate.blocks, mode)
        if choice is None:
            total.accepted = False
            total.reason = SAT_FAIL
            total.detail = "components cannot choose kites jointly"
            total.stats = stats
            return total
        chosen = []
        offset = 0
        for p, r in zip(pieces, results):
            k = len(r.certificate.blocks)
            pairs = [kt.crossing for b, j in zip(r.certificate.blocks, choice[offset:offset + k]) for kt in b.alternatives[j]]
            offset += k
            try:
                chosen.append(validate_embedding(p.adj, pairs, None, mode) if len(p.adj) > 3 else r.witness)
            except EmbeddingRejected as exc:
                total.accepted = False
                total.reason = SAT_FAIL
                total.detail = f"joint witness rejected on {sorted(p.adj)}: {exc}"
                total.stats = stats
                return total
        stats["needed_rule_disagrees"] = stats["needed_rule_rejects"]
        total.satisfiable = True
    crossings = tuple(sorted({pair for w in chosen for pair in w.crossings if not (set(pair) & virtual)}))
    total.witness = Embedding(crossings, {}, mode)
    stats["component_witnesses"] = [w.to_json()["crossings"] for w in chosen]
    total.stats = stats
    return total


# ---------------------------------------------------------------------------
# classification


def _non_edges(adj) -> list[Edge]:
    vs = sorted(adj)
    return [(u, v) for u, v in combinations(vs, 2) if v not in adj[u]]


def check_maximal(g, mode: str = ONE_PLANAR, variant: str = "maximal", **kw) -> bool:
    """``maximal``: no edge can be added; ``planar_maximal``: none can be added uncrossed."""
    mode = check_mode(mode)
    if variant not in ("maximal", "planar_maximal"):
        raise ValueError(f"unknown variant {variant!r}")
    adj = _adjacency(g)
    if not recognize(adj, mode, **kw).accepted:
        raise ValueError("the graph itself is rejected")
    for u, v in _non_edges(adj):
        bigger = {x: set(ns) for x, ns in adj.items()}
        bigger[u].add(v)
        bigger[v].add(u)
        pre = {(u, v): Color.BLACK} if variant == "planar_maximal" else None
        if recognize(bigger, mode, precolored=pre, **kw).accepted:
            return False
    return True


def _max_1p(n: int) -> int:
    if n <= 6:
        return n * (n - 1) // 2
    return 4 * n - 9 if n in (7, 9) else 4 * n - 8


def check_maximum_optimal(g, mode: str = ONE_PLANAR, **kw) -> dict:
    """Density classification; a NIC maximum value that is not known is reported as ``"unknown"``."""
    mode = check_mode(mode)
    adj = _adjacency(g)
    n = len(adj)
    m = sum(len(s) for s in adj.values()) // 2
    accepted = recognize(adj, mode, **kw).accepted
    out: dict = {"accepted": accepted, "n": n, "m": m}
    if mode == ONE_PLANAR:
        out["maximum"] = accepted and m == _max_1p(n)
        out["optimal"] = accepted and n >= 3 and m == 4 * n - 8
    elif mode == IC:
        target = 13 * n // 4 - 6 if n >= 5 else n * (n - 1) // 2
        out["maximum"] = accepted and m == target
        out["optimal"] = accepted and n % 4 == 0 and n >= 8 and 4 * m == 13 * n - 24
    else:
        bound = 18 * (n - 2) // 5 if n >= 5 else n * (n - 1) // 2
        known = n < 5 or (n >= 12 and n % 5 in (2, 3))
        if not accepted:
            out["maximum"] = False
        elif m == bound or known:
            out["maximum"] = m == bound
        else:
            out["maximum"] = "unknown"
        out["optimal"] = accepted and n % 5 == 2 and n >= 12 and 5 * m == 18 * (n - 2)
    return out
