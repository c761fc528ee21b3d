"""Command line: ``bpr {recognize,classify,census,gen,render}``.

Exit codes: 0 accepted (or success), 1 rejected, 2 bad input.
"""

from __future__ import annotations

import argparse
import json
import logging
import os
import sys
import time
from dataclasses import dataclass, field
from typing import Sequence
from xml.sax.saxutils import escape

import networkx as nx

from .coloring import Color, EdgeColoring
from .formula import from_json as formula_from_json, to_json as formula_to_json, to_sexpr
from .generators import FAMILIES, generate
from .graph import Graph, GraphError, edge
from .io import parse_graph, to_edgelist, to_graph6
from .oracle import Constraints, Embedding, census, planarization
from .recognizer import check_maximal, check_maximum_optimal, recognize

log = logging.getLogger("bpr")

REPORT_VERSION = 1
MODES = ("1p", "ic", "nic")
FORMATS = ("graph6", "edgelist")
EMITS = ("verdict", "coloring", "formula", "witness", "all")
CENSUS_LIMIT = 8

EXIT_ACCEPTED, EXIT_REJECTED, EXIT_INPUT = 0, 1, 2


class InputError(Exception):
    pass


@dataclass
class RunReport:
    verdict: bool
    mode: str
    timings: dict[str, float] = field(default_factory=dict)
    coloring: EdgeColoring = field(default_factory=EdgeColoring)
    formula: dict | None = None
    witness: Embedding | None = None
    reason: str | None = None
    version: int = REPORT_VERSION

    @classmethod
    def from_result(cls, res, timings: dict[str, float]) -> "RunReport":
        return cls(res.accepted, res.mode, dict(timings), res.coloring.copy(),
                   formula_to_json(res.formula()), res.witness, res.reason)

    def to_json(self) -> dict:
        return {
            "version": self.version,
            "verdict": "accepted" if self.verdict else "rejected",
            "mode": self.mode,
            "reason": self.reason,
            "timings": self.timings,
            "coloring": self.coloring.to_json(),
            "formula": self.formula,
            "witness": self.witness.to_json() if self.witness is not None else None,
        }

    @classmethod
    def from_json(cls, data: dict) -> "RunReport":
        if data.get("version") != REPORT_VERSION:
            raise ValueError(f"unsupported report version {data.get('version')!r}")
        w = data.get("witness")
        return cls(
            verdict=data["verdict"] == "accepted",
            mode=data["mode"],
            timings=dict(data.get("timings", {})),
            coloring=EdgeColoring.from_json(data.get("coloring", {})),
            formula=data.get("formula"),
            witness=Embedding.from_json(w, data["mode"]) if w is not None else None,
            reason=data.get("reason"),
        )

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, RunReport):
            return NotImplemented
        return self.to_json() == other.to_json()

    def sexpr(self) -> str:
        return to_sexpr(formula_from_json(self.formula)) if self.formula is not None else "true"


def setup_logging(env: str | None = None) -> None:
    level = (env if env is not None else os.environ.get("BPR_LOG", "off")).strip().lower()
    levels = {"off": logging.CRITICAL + 1, "": logging.CRITICAL + 1, "info": logging.INFO, "trace": logging.DEBUG}
    if level not in levels:
        raise InputError(f"BPR_LOG must be one of off, info, trace (got {level!r})")
    log.setLevel(levels[level])
    # rebind to the current stderr on every call
    for h in [h for h in log.handlers if getattr(h, "_bpr", False)]:
        log.removeHandler(h)
    h = logging.StreamHandler(sys.stderr)
    h._bpr = True
    h.setFormatter(logging.Formatter("%(levelname)s %(name)s: %(message)s"))
    log.addHandler(h)
    log.propagate = False


def read_graph(path: str, fmt: str | None) -> Graph:
    try:
        text = sys.stdin.read() if path == "-" else open(path, encoding="ascii").read()
    except (OSError, UnicodeDecodeError) as exc:
        raise InputError(f"cannot read {path}: {exc}") from None
    try:
        return parse_graph(text, fmt)
    except (GraphError, ValueError) as exc:
        raise InputError(f"{path}: {exc}") from None


def write_graph(g: Graph, fmt: str) -> str:
    return to_graph6(g) + "\n" if fmt == "graph6" else to_edgelist(g)


def _out(text: str, path: str | None = None) -> None:
    if path is None or path == "-":
        sys.stdout.write(text if text.endswith("\n") else text + "\n")
    else:
        with open(path, "w", encoding="ascii") as fh:
            fh.write(text)


def run_recognition(g: Graph, mode: str) -> RunReport:
    t0 = time.perf_counter()
    res = recognize(g, mode)
    return RunReport.from_result(res, {"recognize": round(time.perf_counter() - t0, 6)})


# ---------------------------------------------------------------------------
# commands


def cmd_recognize(args) -> int:
    t0 = time.perf_counter()
    g = read_graph(args.input, args.format)
    t_parse = time.perf_counter() - t0
    report = run_recognition(g, args.mode)
    report.timings = {"parse": round(t_parse, 6), **report.timings}
    if args.json:
        data = report.to_json()
        if args.emit != "all":
            keep = {"version", "verdict", "mode", "reason", "timings"}
            if args.emit != "verdict":
                keep.add(args.emit)
            data = {k: v for k, v in data.items() if k in keep}
        _out(json.dumps(data, indent=2))
    else:
        lines = []
        head = "accepted" if report.verdict else f"rejected ({report.reason})"
        lines.append(f"{args.mode}: {head}")
        if args.emit in ("coloring", "all"):
            lines += [f"{k} {v}" for k, v in report.coloring.to_json().items()]
        if args.emit in ("formula", "all"):
            lines.append(report.sexpr())
        if args.emit in ("witness", "all"):
            lines.append(json.dumps(report.witness.to_json()) if report.witness is not None else "no witness")
        _out("\n".join(lines))
    return EXIT_ACCEPTED if report.verdict else EXIT_REJECTED


def classify(g: Graph, mode: str) -> dict:
    dens = check_maximum_optimal(g, mode)
    out = {"mode": mode, "n": g.n, "m": g.m, "triangulated-member": dens["accepted"]}
    if dens["accepted"]:
        out["maximal"] = check_maximal(g, mode, "maximal")
        out["planar-maximal"] = check_maximal(g, mode, "planar_maximal")
    else:
        out["maximal"] = out["planar-maximal"] = False
    out["maximum"] = dens["maximum"]
    out["optimal"] = dens["optimal"]
    return out


def cmd_classify(args) -> int:
    g = read_graph(args.input, args.format)
    out = classify(g, args.mode)
    if args.json:
        _out(json.dumps(out, indent=2))
    else:
        _out("\n".join(f"{k}: {v}" for k, v in out.items()))
    return EXIT_ACCEPTED if out["triangulated-member"] else EXIT_REJECTED


def _load_constraints(path: str | None) -> Constraints | None:
    if path is None:
        return None
    try:
        with open(path, encoding="utf-8") as fh:
            data = json.load(fh)
        planar = frozenset(edge(*e) for e in data.get("planar", []))
        crossed = frozenset(edge(*e) for e in data.get("crossed", []))
        return Constraints(planar, crossed - planar)
    except (OSError, ValueError, TypeError, KeyError) as exc:
        raise InputError(f"bad constraints file {path}: {exc}") from None


def cmd_census(args) -> int:
    g = read_graph(args.input, args.format)
    if g.n > CENSUS_LIMIT:
        raise InputError(f"census is limited to n <= {CENSUS_LIMIT} (got n={g.n})")
    out = census(g, _load_constraints(args.constraints), args.mode)
    out["count"] = out["classes"]
    if args.json:
        _out(json.dumps(out, indent=2))
    else:
        lines = [f"{args.mode}: {out['count']} embedding classes ({out['labeled']} labeled)"]
        lines += [json.dumps(r) for r in out["representatives"]]
        _out("\n".join(lines))
    return EXIT_ACCEPTED if out["count"] else EXIT_REJECTED


def cmd_gen(args) -> int:
    if args.family not in FAMILIES:
        raise InputError(f"unknown family {args.family!r}; choose from {', '.join(sorted(FAMILIES))}")
    try:
        g = generate(args.family, *args.params)
    except (TypeError, ValueError, GraphError) as exc:
        raise InputError(f"cannot build {args.family}: {exc}") from None
    text = write_graph(g, args.format)
    # the written file must read back as the same graph
    again = parse_graph(text, args.format)
    assert again.n == g.n and again.edges == g.edges
    _out(text, args.out)
    return EXIT_ACCEPTED


def _colored_edges(g: Graph, report: RunReport | None) -> dict:
    return {e: report.coloring.get(e) for e in g.sorted_edges()} if report is not None else {}


def to_dot(g: Graph, report: RunReport | None = None) -> str:
    """DOT text; an accepted report adds crossing nodes and edge colors."""
    lines = ["graph G {", "  node [shape=circle];"]
    lines += [f"  {v};" for v in g.vertices]
    colors = _colored_edges(g, report) if report is not None and report.verdict else {}
    crossed = {}
    if report is not None and report.verdict and report.witness is not None:
        for i, (e, f) in enumerate(report.witness.crossings):
            lines.append(f'  x{i} [shape=point, width=0.12, color=red, class="crossing"];')
            crossed[e] = crossed[f] = i
    for e in g.sorted_edges():
        c = colors.get(e)
        attr = f' [color={c.value if c is not Color.GREY else "gray"}]' if c is not None else ""
        if e in crossed:
            i = crossed[e]
            lines.append(f"  {e[0]} -- x{i}{attr};")
            lines.append(f"  x{i} -- {e[1]}{attr};")
        else:
            lines.append(f"  {e[0]} -- {e[1]}{attr};")
    lines.append("}")
    return "\n".join(lines) + "\n"


def _layout(g: Graph, report: RunReport | None) -> tuple[dict, dict]:
    adj = g.adjacency()
    crossings = list(report.witness.crossings) if report is not None and report.verdict and report.witness else []
    plan = planarization(adj, crossings)
    h = nx.Graph()
    h.add_nodes_from(plan)
    h.add_edges_from((u, w) for u in plan for w in plan[u])
    if nx.check_planarity(h)[0]:
        pos = nx.planar_layout(h)
    else:
        pos = nx.circular_layout(h)
    return {v: tuple(map(float, p)) for v, p in pos.items()}, {i: pair for i, pair in enumerate(crossings)}


def to_svg(g: Graph, report: RunReport | None = None, size: int = 480) -> str:
    """SVG of the planarization: crossings become marker dots."""
    pos, crossings = _layout(g, report)
    xs = [p[0] for p in pos.values()] or [0.0]
    ys = [p[1] for p in pos.values()] or [0.0]
    span = max(max(xs) - min(xs), max(ys) - min(ys)) or 1.0
    pad = 24

    def xy(v):
        x, y = pos[v]
        return (pad + (x - min(xs)) / span * (size - 2 * pad), pad + (y - min(ys)) / span * (size - 2 * pad))

    colors = _colored_edges(g, report) if report is not None and report.verdict else {}
    via = {}
    for i, (e, f) in crossings.items():
        via[e] = via[f] = -(i + 1)
    out = [f'<svg xmlns="http://www.w3.org/2000/svg" width="{size}" height="{size}" viewBox="0 0 {size} {size}">']
    for e in g.sorted_edges():
        c = colors.get(e)
        stroke = {None: "#444", Color.GREY: "gray"}.get(c, c.value if c is not None else "#444")
        pts = [e[0], via[e], e[1]] if e in via else [e[0], e[1]]
        d = " ".join(f"{x:.1f},{y:.1f}" for x, y in map(xy, pts))
        out.append(f'  <polyline class="edge" points="{d}" fill="none" stroke="{stroke}" stroke-width="2"/>')
    for i in crossings:
        x, y = xy(-(i + 1))
        out.append(f'  <circle class="crossing" cx="{x:.1f}" cy="{y:.1f}" r="4" fill="red"/>')
    for v in g.vertices:
        x, y = xy(v)
        out.append(f'  <circle class="vertex" cx="{x:.1f}" cy="{y:.1f}" r="9" fill="white" stroke="black"/>')
        out.append(f'  <text x="{x:.1f}" y="{y + 4:.1f}" font-size="10" text-anchor="middle">{escape(str(v))}</text>')
    out.append("</svg>")
    return "\n".join(out) + "\n"


def cmd_render(args) -> int:
    g = read_graph(args.input, args.format)
    if args.report is not None:
        try:
            with open(args.report, encoding="utf-8") as fh:
                report = RunReport.from_json(json.load(fh))
        except (OSError, ValueError, KeyError) as exc:
            raise InputError(f"bad report {args.report}: {exc}") from None
    else:
        report = run_recognition(g, args.mode)
    text = to_svg(g, report) if args.svg else to_dot(g, report)
    _out(text, args.out)
    return EXIT_ACCEPTED if report.verdict else EXIT_REJECTED


# ---------------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="bpr", description="Triangulated 1-planar, IC and NIC recognition.")
    sub = p.add_subparsers(dest="command", required=True)

    def graph_args(sp, mode=True):
        sp.add_argument("input", help="graph file, or - for stdin")
        sp.add_argument("--format", choices=FORMATS, default=None, help="input format (guessed if omitted)")
        if mode:
            sp.add_argument("--mode", choices=MODES, default="1p")

    sp = sub.add_parser("recognize", help="decide membership and report the evidence")
    graph_args(sp)
    sp.add_argument("--emit", choices=EMITS, default="verdict")
    sp.add_argument("--json", action="store_true")
    sp.set_defaults(func=cmd_recognize)

    sp = sub.add_parser("classify", help="maximal / maximum / optimal checks")
    graph_args(sp)
    sp.add_argument("--json", action="store_true")
    sp.set_defaults(func=cmd_classify)

    sp = sub.add_parser("census", help=f"count embeddings by brute force (n <= {CENSUS_LIMIT})")
    graph_args(sp)
    sp.add_argument("--constraints", help='JSON file {"planar": [[u, v], ...], "crossed": [...]}')
    sp.add_argument("--json", action="store_true")
    sp.set_defaults(func=cmd_census)

    sp = sub.add_parser("gen", help="write a generated graph")
    sp.add_argument("family", help=", ".join(sorted(FAMILIES)))
    sp.add_argument("params", nargs="*")
    sp.add_argument("--format", choices=FORMATS, default="edgelist")
    sp.add_argument("--out", default=None)
    sp.set_defaults(func=cmd_gen)

    sp = sub.add_parser("render", help="DOT or SVG drawing of a graph and its recognition")
    graph_args(sp)
    sp.add_argument("--report", help="JSON report from `recognize --json --emit all`")
    kind = sp.add_mutually_exclusive_group()
    kind.add_argument("--dot", action="store_true", help="DOT output (default)")
    kind.add_argument("--svg", action="store_true")
    sp.add_argument("--out", default=None)
    sp.set_defaults(func=cmd_render)
    return p


def main(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_INPUT if exc.code else EXIT_ACCEPTED
    try:
        setup_logging()
        return args.func(args)
    except InputError as exc:
        print(f"bpr: error: {exc}", file=sys.stderr)
        return EXIT_INPUT


if __name__ == "__main__":
    sys.exit(main())
