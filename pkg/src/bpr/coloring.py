"""Edge colorings recording which edges are planar, crossed, or undecided.

black            planar in every triangulated 1-planar embedding
red / blue       a pair of edges crossing each other in every such embedding
orange / cyan    orange is crossed by one of its cyan candidates
grey             undecided (edges of small graphs)
"""

from __future__ import annotations

from enum import Enum
from typing import Iterable, Iterator, Mapping

from .graph import Edge, edge


class Color(str, Enum):
    BLACK = "black"
    RED = "red"
    BLUE = "blue"
    ORANGE = "orange"
    CYAN = "cyan"
    GREY = "grey"


PLANAR = frozenset({Color.BLACK})
CROSSED = frozenset({Color.RED, Color.BLUE, Color.ORANGE})
# colors that survive a later black or grey request
STICKY = frozenset({Color.BLUE, Color.CYAN})


class ColoringConflict(Exception):
    def __init__(self, e: Edge, old: Color, new: Color):
        super().__init__(f"edge {e}: {old.value} cannot become {new.value}")
        self.edge = e
        self.old = old
        self.new = new


class EdgeColoring:
    """Partial map from canonical edges to colors.

    Edges never seen are uncolored.  ``extend`` applies the overrule rules;
    everything else is a plain mapping.
    """

    __slots__ = ("_colors",)

    def __init__(self, colors: Mapping[Edge, Color] | None = None):
        self._colors: dict[Edge, Color] = dict(colors or {})

    def __contains__(self, e: object) -> bool:
        return e in self._colors

    def __getitem__(self, e: Edge) -> Color:
        return self._colors[e]

    def get(self, e: Edge, default=None):
        return self._colors.get(e, default)

    def __iter__(self) -> Iterator[Edge]:
        return iter(self._colors)

    def __len__(self) -> int:
        return len(self._colors)

    def items(self):
        return self._colors.items()

    def copy(self) -> "EdgeColoring":
        return EdgeColoring(self._colors)

    def __eq__(self, other: object) -> bool:
        return isinstance(other, EdgeColoring) and self._colors == other._colors

    def with_color(self, color: Color) -> set[Edge]:
        return {e for e, c in self._colors.items() if c is color}

    def extend(self, e: Edge, color: Color | str) -> Color:
        """Color ``e`` in place; returns the color it ends up with."""
        color = Color(color)
        e = edge(*e)
        old = self._colors.get(e)
        if old is None:
            self._colors[e] = color
            return color
        if old is color:
            return old
        if color in (Color.BLACK, Color.GREY) and old in STICKY:
            return old
        raise ColoringConflict(e, old, color)

    def extend_many(self, edges: Iterable[Edge], color: Color | str) -> None:
        for e in edges:
            self.extend(e, color)

    def to_json(self) -> dict[str, str]:
        return {f"{u}-{v}": c.value for (u, v), c in sorted(self._colors.items())}

    @classmethod
    def from_json(cls, data: Mapping[str, str]) -> "EdgeColoring":
        out = {}
        for key, value in data.items():
            u, v = key.split("-")
            out[edge(int(u), int(v))] = Color(value)
        return cls(out)

    def __repr__(self) -> str:
        return f"EdgeColoring({len(self._colors)} colored)"


def extend(coloring: EdgeColoring, e: Edge, color: Color | str) -> EdgeColoring:
    """Functional form of :meth:`EdgeColoring.extend`; raises on conflict."""
    out = coloring.copy()
    out.extend(e, color)
    return out


def color_kite(coloring: EdgeColoring, kite, red: Edge | None = None) -> EdgeColoring:
    """Color a kite in place: one crossing edge red, the other blue, boundary black.

    ``red`` picks which crossing edge becomes red (default: the first one).
    """
    e, f = kite.crossing
    if red is not None and edge(*red) == f:
        e, f = f, e
    coloring.extend(e, Color.RED)
    coloring.extend(f, Color.BLUE)
    coloring.extend_many(kite.planar_edges, Color.BLACK)
    return coloring
