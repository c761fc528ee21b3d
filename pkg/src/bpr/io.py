"""Reading and writing graphs as graph6 strings and plain edge lists."""

from __future__ import annotations

import networkx as nx

from .graph import Graph, GraphError, build_graph


def parse_graph6(text: str) -> Graph:
    s = text.strip()
    if s.startswith(">>graph6<<"):
        s = s[len(">>graph6<<"):]
    if not s:
        raise GraphError("empty graph6 string")
    try:
        h = nx.from_graph6_bytes(s.encode("ascii"))
    except (ValueError, nx.NetworkXError, UnicodeEncodeError) as exc:
        raise GraphError(f"bad graph6 data: {exc}") from None
    return build_graph(h.number_of_nodes(), sorted(h.edges()))


def to_graph6(g: Graph) -> str:
    h = g.to_networkx()
    return nx.to_graph6_bytes(h, nodes=list(range(g.n)), header=False).decode("ascii").strip()


def parse_edgelist(text: str) -> Graph:
    """First line ``n m``, then ``m`` lines ``u v`` with 0-based ids.

    Blank lines and ``#`` comments are ignored.
    """
    rows = []
    for line in text.splitlines():
        line = line.split("#", 1)[0].strip()
        if line:
            rows.append(line.split())
    if not rows:
        raise GraphError("empty edge list")
    try:
        n, m = (int(x) for x in rows[0])
        pairs = [(int(a), int(b)) for a, b in rows[1:]]
    except ValueError:
        raise GraphError("edge list rows must hold two integers") from None
    if len(pairs) != m:
        raise GraphError(f"header announces {m} edges, found {len(pairs)}")
    return build_graph(n, pairs)


def to_edgelist(g: Graph) -> str:
    lines = [f"{g.n} {g.m}"] + [f"{u} {v}" for u, v in g.sorted_edges()]
    return "\n".join(lines) + "\n"


def parse_graph(text: str, fmt: str | None = None) -> Graph:
    """Parse either format; with ``fmt=None`` the format is guessed."""
    if fmt is None:
        first = text.strip().split("\n", 1)[0].strip()
        fmt = "edgelist" if first and all(tok.lstrip("-").isdigit() for tok in first.split()) else "graph6"
    if fmt == "graph6":
        return parse_graph6(text)
    if fmt == "edgelist":
        return parse_edgelist(text)
    raise ValueError(f"unknown format {fmt!r}")
