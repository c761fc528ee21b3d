"""Acceptance suite: one test per criterion, one PASS/FAIL line per criterion.

Run directly (``python tests/test_acceptance.py``) for the summary lines
alone; under pytest the same lines are printed in the terminal summary.
"""

from __future__ import annotations

import sys
import time
from functools import lru_cache
from pathlib import Path

import numpy as np
import pytest

sys.path.insert(0, str(Path(__file__).parent))

from corpus import MODES, full_corpus  # noqa: E402

from bpr.coloring import CROSSED, Color  # noqa: E402
from bpr.formula import nic_occurrences, small_block_is_2cnf  # noqa: E402
from bpr.generators import (  # noqa: E402
    cube,
    cylinder_quadrangulation,
    gen_optimal_1planar,
    kite_covered_tetrahedron,
    k5_minus_edge,
    pseudo_double_wheel,
    sc_graph,
)
from bpr.graph import complete_graph, edge  # noqa: E402
from bpr.oracle import Constraints, EmbeddingRejected, census, enumerate_embeddings, validate_embedding  # noqa: E402
from bpr.gadgets import MC4  # noqa: E402
from bpr.recognizer import check_maximal, check_maximum_optimal, recognize  # noqa: E402

RESULTS: dict[int, tuple[bool, str]] = {}


def record(n: int, ok: bool, detail: str) -> None:
    RESULTS[n] = (ok, detail)
    print(f"criterion {n}: {'PASS' if ok else 'FAIL'} - {detail}")


@lru_cache(maxsize=None)
def runs():
    """Recognizer result and all oracle embeddings per corpus graph and mode."""
    out = []
    for g in full_corpus():
        for mode in MODES:
            out.append((g, mode, recognize(g, mode), enumerate_embeddings(g, None, mode)))
    return out


def c1():
    k5 = complete_graph(5)
    t = time.perf_counter()
    fixed = census(k5, Constraints.build(planar=[(0, 1), (1, 2), (0, 2)]))["classes"]
    free = census(k5)["classes"]
    dt = time.perf_counter() - t
    return fixed == 3 and free == 1 and dt < 1, f"fixed outer face {fixed} (want 3), unconstrained {free} class (want 1), {dt:.2f}s"


def c2():
    t = time.perf_counter()
    got = {
        ("K7", "1p"): recognize(complete_graph(7), "1p"),
        ("K6", "ic"): recognize(complete_graph(6), "ic"),
        ("K6", "nic"): recognize(complete_graph(6), "nic"),
    }
    dt = time.perf_counter() - t
    ok = all(not r.accepted and r.reason == "edge_bound" for r in got.values()) and dt < 1
    return ok, ", ".join(f"{g} {m}: {r.reason}" for (g, m), r in got.items()) + f", {dt:.2f}s"


def c3():
    t = time.perf_counter()
    rs = runs()
    bad = [(sorted(g.edges), m) for g, m, r, embs in rs if r.accepted != bool(embs)]
    acc = sum(r.accepted for _, _, r, _ in rs)
    return not bad, f"{len(rs)} runs over {len(full_corpus())} graphs, {acc} accepted, {len(bad)} disagreements, {time.perf_counter() - t:.0f}s"


def c4():
    checked = bad = 0
    for g, mode, r, embs in runs():
        if not r.accepted:
            continue
        checked += 1
        if mode != "1p" and r.satisfiable != bool(embs):
            bad += 1
            continue
        try:
            validate_embedding(g.adjacency(), r.witness.crossings, None, mode)
        except EmbeddingRejected:
            bad += 1
    return bad == 0, f"{checked} accepted runs, {bad} with a wrong formula verdict or invalid witness"


def _respects(coloring, emb) -> bool:
    crossed = emb.crossed_edges()
    for e, c in coloring.items():
        if c is Color.BLACK and e in crossed:
            return False
        if c in CROSSED and e not in crossed:
            return False
    return True


def c5():
    # every oracle embedding is held to the coloring, a superset of those
    # consistent with the run's choices
    checked = bad = 0
    for g, mode, r, embs in runs():
        if not r.accepted:
            continue
        checked += 1
        if not _respects(r.coloring, r.witness) or not all(_respects(r.coloring, e) for e in embs):
            bad += 1
    return bad == 0, f"{checked} accepted runs, {bad} colorings contradicted by an embedding"


def c6():
    nic = ic = bad = 0
    for g, mode, r, _ in runs():
        cert = r.certificate
        if cert is None:
            continue
        if mode == "nic":
            nic += 1
            if any(len(ks) > 2 for ks in nic_occurrences(cert).values()) or "third_occurrence" in r.stats:
                bad += 1
        elif mode == "ic":
            ic += 1
            if not all(small_block_is_2cnf(b) for b in cert.blocks if b.kind == "small"):
                bad += 1
    return bad == 0, f"{nic} NIC and {ic} IC certificates, {bad} violations"


def c7():
    q3 = gen_optimal_1planar(cube())
    cls = check_maximum_optimal(q3, "1p")
    parts = [f"Q3 n={q3.n} m={q3.m} optimal={cls['optimal']}"]
    ok = q3.n == 8 and q3.m == 24 and cls["accepted"] and cls["optimal"]
    for q in (pseudo_double_wheel(4), pseudo_double_wheel(5)):
        g = gen_optimal_1planar(q)
        r = recognize(g, "1p")
        ok = ok and r.accepted and g.m == 4 * g.n - 8
        parts.append(f"n={g.n} m={g.m} {'accepted' if r.accepted else 'rejected'}")
    return ok, ", ".join(parts)


def c8():
    g = k5_minus_edge()
    pm = check_maximal(g, "1p", "planar_maximal")
    missing = [(u, v) for u in range(5) for v in range(u + 1, 5) if not g.has_edge(u, v)]
    grown = complete_graph(5)
    planar_add = recognize(grown, "1p", precolored={edge(*missing[0]): Color.BLACK}).accepted
    return (not pm) and planar_add, f"planar_maximal={pm}, missing edge {missing[0]} embeddable uncrossed: {planar_add}"


SCALING_SIZES = (200, 400, 800, 1600)


def scaling_instance(n: int):
    return gen_optimal_1planar(cylinder_quadrangulation(n // 4, 4))


def c9():
    times = []
    for n in SCALING_SIZES:
        g = scaling_instance(n)
        t = time.perf_counter()
        r = recognize(g, "1p")
        times.append(time.perf_counter() - t)
        if not r.accepted:
            return False, f"n={n} rejected ({r.reason})"
    slope = float(np.polyfit(np.log(SCALING_SIZES), np.log(times), 1)[0])
    shown = ", ".join(f"{n}: {t:.2f}s" for n, t in zip(SCALING_SIZES, times))
    return slope <= 3.5, f"exponent {slope:.2f} (limit 3.5); {shown}"


def c10():
    tet = recognize(kite_covered_tetrahedron(refine=True), "ic")
    sc = sc_graph()
    got = {m: recognize(sc, m) for m in MODES}
    ok = (not tet.accepted and tet.reason == "mc4_mismatch"
          and got["1p"].accepted
          and all(not got[m].accepted and got[m].reason == "mc4_mismatch" for m in ("ic", "nic")))
    # 1P gets through the SC configuration by an MC4 reading
    ok = ok and any(step[0] == MC4 for step in got["1p"].trace)
    return ok, (f"refined tetrahedron ic: {tet.reason}; sc 1p: {'accepted' if got['1p'].accepted else got['1p'].reason}, "
                f"ic: {got['ic'].reason}, nic: {got['nic'].reason}")


CRITERIA = {1: c1, 2: c2, 3: c3, 4: c4, 5: c5, 6: c6, 7: c7, 8: c8, 9: c9, 10: c10}
SLOW = {3, 4, 5, 6, 9}


@pytest.mark.parametrize(
    "n", [pytest.param(n, marks=pytest.mark.slow) if n in SLOW else n for n in CRITERIA]
)
def test_criterion(n):
    ok, detail = CRITERIA[n]()
    record(n, ok, detail)
    assert ok, detail


if __name__ == "__main__":
    failed = 0
    for n, fn in CRITERIA.items():
        ok, detail = fn()
        record(n, ok, detail)
        failed += not ok
    sys.exit(1 if failed else 0)
