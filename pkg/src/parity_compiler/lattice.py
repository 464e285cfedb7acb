"""Plaquette-constraint layouts on a rectangular qubit grid.

Coordinates are 1-based. Column indices grow to the east, row indices grow to
the south, so row 1 is the top (north) row of the chip and the ASCII layout
format lists plaquette rows in the same top-to-bottom order.

Cell ``(c, r)`` spans the qubits ``(c, r)`` (NW), ``(c+1, r)`` (NE),
``(c, r+1)`` (SW) and ``(c+1, r+1)`` (SE).
"""
from __future__ import annotations

import enum
import json
from dataclasses import dataclass, field, replace
from typing import Iterable, Iterator, Mapping, NamedTuple

import numpy as np

__all__ = [
    "QubitCoord",
    "CellCoord",
    "Corner",
    "Side",
    "Openness",
    "Direction",
    "Shape",
    "PlaquetteKind",
    "Plaquette",
    "Layout",
    "LayoutParseError",
    "classify_side",
    "forced_direction",
    "gen_squares",
    "gen_random",
    "gen_lhz",
    "transpose",
    "randomize_angles",
    "parse_layout_text",
    "format_layout_text",
    "layout_to_json",
    "layout_from_json",
    "load_layout",
]


class QubitCoord(NamedTuple):
    col: int
    row: int


class CellCoord(NamedTuple):
    col: int
    row: int


class Corner(enum.Enum):
    NW = "NW"
    NE = "NE"
    SW = "SW"
    SE = "SE"

    @property
    def offset(self) -> tuple[int, int]:
        return _CORNER_OFFSETS[self]

    @property
    def is_north(self) -> bool:
        return self in (Corner.NW, Corner.NE)

    @property
    def is_west(self) -> bool:
        return self in (Corner.NW, Corner.SW)


_CORNER_OFFSETS = {
    Corner.NW: (0, 0),
    Corner.NE: (1, 0),
    Corner.SW: (0, 1),
    Corner.SE: (1, 1),
}

# reflection across the main diagonal (col <-> row)
_TRANSPOSED_CORNER = {
    Corner.NW: Corner.NW,
    Corner.NE: Corner.SW,
    Corner.SW: Corner.NE,
    Corner.SE: Corner.SE,
}


class Side(enum.Enum):
    LEFT = "left"
    RIGHT = "right"


class Openness(enum.Enum):
    OPEN = "open"
    CLOSED = "closed"


class Direction(enum.Enum):
    """Vertical CNOT direction of a plaquette inside a horizontal strip.

    ``UP`` CNOTs target the north qubit, so the plaquette's ZZ gate acts on
    the north row of the strip; ``DOWN`` is the mirror image.
    """

    UP = "up"
    DOWN = "down"
    FREE = "free"
    NONE = "none"

    @property
    def opposite(self) -> "Direction":
        if self is Direction.UP:
            return Direction.DOWN
        if self is Direction.DOWN:
            return Direction.UP
        raise ValueError(f"{self} has no opposite")


class Shape(enum.Enum):
    SQUARE = "square"
    TRIANGLE = "triangle"
    EMPTY = "empty"


@dataclass(frozen=True)
class PlaquetteKind:
    shape: Shape
    missing: Corner | None = None

    def __post_init__(self):
        if (self.shape is Shape.TRIANGLE) != (self.missing is not None):
            raise ValueError("exactly the triangle kind carries a missing corner")

    @classmethod
    def square(cls) -> "PlaquetteKind":
        return cls(Shape.SQUARE)

    @classmethod
    def triangle(cls, missing: Corner | str) -> "PlaquetteKind":
        return cls(Shape.TRIANGLE, Corner(missing))

    @classmethod
    def empty(cls) -> "PlaquetteKind":
        return cls(Shape.EMPTY)

    @property
    def is_square(self) -> bool:
        return self.shape is Shape.SQUARE

    @property
    def is_triangle(self) -> bool:
        return self.shape is Shape.TRIANGLE

    @property
    def is_empty(self) -> bool:
        return self.shape is Shape.EMPTY

    @property
    def corners(self) -> tuple[Corner, ...]:
        if self.is_empty:
            return ()
        return tuple(c for c in Corner if c is not self.missing)

    def __str__(self) -> str:
        if self.is_triangle:
            return f"Triangle(missing={self.missing.value})"
        return self.shape.value.capitalize()


SQUARE = PlaquetteKind.square()
EMPTY = PlaquetteKind.empty()


@dataclass(frozen=True)
class Plaquette:
    cell: CellCoord
    kind: PlaquetteKind
    angle: float = 0.0

    def __post_init__(self):
        if self.kind.is_empty and self.angle != 0.0:
            object.__setattr__(self, "angle", 0.0)

    def qubits(self) -> tuple[QubitCoord, ...]:
        c, r = self.cell
        return tuple(QubitCoord(c + dc, r + dr) for dc, dr in (k.offset for k in self.kind.corners))


@dataclass(frozen=True)
class Layout:
    """A rectangular qubit grid with one plaquette entry per unit cell."""

    n_cols: int
    n_rows: int
    plaquettes: Mapping[CellCoord, Plaquette] = field(repr=False)

    def __post_init__(self):
        if self.n_cols < 2 or self.n_rows < 2:
            raise ValueError(f"grid must be at least 2x2 qubits, got {self.n_cols}x{self.n_rows}")
        cells = dict(self.plaquettes)
        for c in range(1, self.n_cols):
            for r in range(1, self.n_rows):
                cc = CellCoord(c, r)
                if cc not in cells:
                    cells[cc] = Plaquette(cc, EMPTY)
        extra = [cc for cc in cells if not self.has_cell(cc)]
        if extra:
            raise ValueError(f"cells outside the {self.n_cols}x{self.n_rows} grid: {extra[:3]}")
        ordered = {cc: cells[cc] for cc in sorted(cells, key=lambda k: (k[1], k[0]))}
        object.__setattr__(self, "plaquettes", ordered)

    @classmethod
    def from_kinds(cls, kinds: Iterable[Iterable[PlaquetteKind]], angle: float = 1.0) -> "Layout":
        """Build a layout from rows of kinds, top plaquette row first."""
        rows = [list(r) for r in kinds]
        if not rows or not rows[0] or any(len(r) != len(rows[0]) for r in rows):
            raise ValueError("kinds must form a non-empty rectangle")
        plaq = {}
        for r, row in enumerate(rows, start=1):
            for c, kind in enumerate(row, start=1):
                cc = CellCoord(c, r)
                plaq[cc] = Plaquette(cc, kind, 0.0 if kind.is_empty else angle)
        return cls(len(rows[0]) + 1, len(rows) + 1, plaq)

    def has_cell(self, cell: tuple[int, int]) -> bool:
        c, r = cell
        return 1 <= c < self.n_cols and 1 <= r < self.n_rows

    def __getitem__(self, cell: tuple[int, int]) -> Plaquette:
        if not self.has_cell(cell):
            raise IndexError(f"cell {tuple(cell)} outside {self.n_cols - 1}x{self.n_rows - 1} cells")
        return self.plaquettes[CellCoord(*cell)]

    def __iter__(self) -> Iterator[Plaquette]:
        return iter(self.plaquettes.values())

    def __eq__(self, other):
        if not isinstance(other, Layout):
            return NotImplemented
        return (
            self.n_cols == other.n_cols
            and self.n_rows == other.n_rows
            and dict(self.plaquettes) == dict(other.plaquettes)
        )

    def __hash__(self):
        return hash((self.n_cols, self.n_rows, tuple(self.plaquettes.values())))

    @property
    def n_qubits(self) -> int:
        return self.n_cols * self.n_rows

    def constraints(self) -> list[Plaquette]:
        return [p for p in self if not p.kind.is_empty]

    @property
    def n_constraints(self) -> int:
        return len(self.constraints())

    @property
    def n_squares(self) -> int:
        return sum(p.kind.is_square for p in self)

    @property
    def n_triangles(self) -> int:
        return sum(p.kind.is_triangle for p in self)

    def qubit_index(self, q: tuple[int, int]) -> int:
        """Row-major index ``(col-1) + (row-1)*n_cols``."""
        col, row = q
        return (col - 1) + (row - 1) * self.n_cols

    def strip(self, row: int) -> list[Plaquette]:
        return [self.plaquettes[CellCoord(c, row)] for c in range(1, self.n_cols)]

    def with_angles(self, angles: Mapping[tuple[int, int], float]) -> "Layout":
        plaq = {cc: replace(p, angle=float(angles.get(cc, p.angle))) for cc, p in self.plaquettes.items()}
        return Layout(self.n_cols, self.n_rows, plaq)


def classify_side(layout: Layout, cell: tuple[int, int], side: Side) -> Openness:
    """Closed iff the plaquette holds both qubits of the given vertical side."""
    kind = layout[cell].kind
    return side_openness(kind, side)


def side_openness(kind: PlaquetteKind, side: Side) -> Openness:
    if kind.is_empty:
        return Openness.OPEN
    if kind.is_square:
        return Openness.CLOSED
    missing_west = kind.missing.is_west
    on_side = missing_west if side is Side.LEFT else not missing_west
    return Openness.OPEN if on_side else Openness.CLOSED


def forced_direction(kind: PlaquetteKind) -> Direction:
    if kind.is_empty:
        return Direction.NONE
    if kind.is_square:
        return Direction.FREE
    # the ZZ gate goes on the row that still holds two constraint qubits
    return Direction.DOWN if kind.missing.is_north else Direction.UP


def gen_squares(n_cols: int, n_rows: int, angle: float = 1.0) -> Layout:
    if n_cols < 2 or n_rows < 2:
        raise ValueError("dimensions must be >= 2")
    return Layout.from_kinds([[SQUARE] * (n_cols - 1) for _ in range(n_rows - 1)], angle)


_CORNER_ORDER = (Corner.NW, Corner.NE, Corner.SW, Corner.SE)


def gen_random(n_cols: int, n_rows: int, r3: float, seed: int, angle: float = 1.0) -> Layout:
    """Hole-free random layout; each cell is a triangle with probability ``r3``."""
    if n_cols < 2 or n_rows < 2:
        raise ValueError("dimensions must be >= 2")
    if not 0.0 <= r3 <= 1.0:
        raise ValueError(f"r3 must lie in [0, 1], got {r3}")
    rng = np.random.default_rng(seed)
    shape = (n_rows - 1, n_cols - 1)
    is_tri = rng.random(shape) < r3
    orient = rng.integers(0, 4, size=shape)
    kinds = [
        [PlaquetteKind.triangle(_CORNER_ORDER[orient[r, c]]) if is_tri[r, c] else SQUARE for c in range(shape[1])]
        for r in range(shape[0])
    ]
    return Layout.from_kinds(kinds, angle)


def gen_lhz(n_logical: int, angle: float = 1.0) -> Layout:
    """Staircase realization of the LHZ layout for ``n_logical`` logical spins.

    Qubit row ``k`` holds physical qubits in columns ``1..n_logical-k``, so the
    longest row sits on top. Plaquette row ``j`` has ``n_logical-1-j`` cells;
    the last one lacks its SE qubit and is a triangle whose ZZ gate points
    north into the bulk.
    """
    if n_logical < 3:
        raise ValueError("n_logical must be >= 3")
    size = n_logical - 1
    kinds = []
    for j in range(1, n_logical - 1):
        width = n_logical - 1 - j
        row = [SQUARE] * (width - 1) + [PlaquetteKind.triangle(Corner.SE)]
        row += [EMPTY] * (size - 1 - width)
        kinds.append(row)
    return Layout.from_kinds(kinds, angle)


def transpose(layout: Layout) -> Layout:
    plaq = {}
    for p in layout:
        c, r = p.cell
        kind = p.kind
        if kind.is_triangle:
            kind = PlaquetteKind.triangle(_TRANSPOSED_CORNER[kind.missing])
        plaq[CellCoord(r, c)] = Plaquette(CellCoord(r, c), kind, p.angle)
    return Layout(layout.n_rows, layout.n_cols, plaq)


def randomize_angles(layout: Layout, seed: int, low: float = -np.pi, high: float = np.pi) -> Layout:
    rng = np.random.default_rng(seed)
    angles = {p.cell: float(rng.uniform(low, high)) for p in layout}
    return layout.with_angles(angles)


# --- text / JSON formats -------------------------------------------------

_CHAR_TO_KIND = {
    "Q": SQUARE,
    "1": PlaquetteKind.triangle(Corner.NW),
    "2": PlaquetteKind.triangle(Corner.NE),
    "3": PlaquetteKind.triangle(Corner.SW),
    "4": PlaquetteKind.triangle(Corner.SE),
    ".": EMPTY,
}
_KIND_TO_CHAR = {v: k for k, v in _CHAR_TO_KIND.items()}


class LayoutParseError(ValueError):
    def __init__(self, message: str, line: int, column: int):
        super().__init__(f"line {line}, column {column}: {message}")
        self.line = line
        self.column = column


def parse_layout_text(text: str, default_angle: float = 1.0) -> Layout:
    """Parse the ASCII grid format.

    One character per cell, plaquette rows top to bottom. An optional first
    line ``cols rows default_angle`` gives the qubit grid size. Blank lines and
    lines starting with ``#`` are ignored.
    """
    lines = [(i, ln.rstrip("\r\n")) for i, ln in enumerate(text.splitlines(), start=1)]
    lines = [(i, ln.strip()) for i, ln in lines if ln.strip() and not ln.strip().startswith("#")]
    if not lines:
        raise LayoutParseError("empty layout", 1, 1)
    header = None
    first_no, first = lines[0]
    if " " in first or "\t" in first:
        parts = first.split()
        if len(parts) != 3:
            raise LayoutParseError("header must be 'cols rows default_angle'", first_no, 1)
        try:
            header = (int(parts[0]), int(parts[1]), float(parts[2]))
        except ValueError:
            raise LayoutParseError("header must be 'cols rows default_angle'", first_no, 1) from None
        default_angle = header[2]
        lines = lines[1:]
    if not lines:
        raise LayoutParseError("no grid rows", first_no, 1)
    width = len(lines[0][1])
    rows = []
    for line_no, ln in lines:
        if len(ln) != width:
            raise LayoutParseError(f"row has {len(ln)} cells, expected {width}", line_no, min(len(ln), width) + 1)
        row = []
        for col_no, ch in enumerate(ln, start=1):
            if ch not in _CHAR_TO_KIND:
                raise LayoutParseError(f"unexpected character {ch!r}", line_no, col_no)
            row.append(_CHAR_TO_KIND[ch])
        rows.append(row)
    if header is not None and (header[0] != width + 1 or header[1] != len(rows) + 1):
        raise LayoutParseError(
            f"header says {header[0]}x{header[1]} qubits but grid is {width + 1}x{len(rows) + 1}", first_no, 1
        )
    return Layout.from_kinds(rows, default_angle)


def format_layout_text(layout: Layout, header: bool = True, default_angle: float = 1.0) -> str:
    out = []
    if header:
        out.append(f"{layout.n_cols} {layout.n_rows} {default_angle!r}")
    for r in range(1, layout.n_rows):
        out.append("".join(_KIND_TO_CHAR[p.kind] for p in layout.strip(r)))
    return "\n".join(out) + "\n"


def layout_to_json(layout: Layout) -> str:
    items = []
    for p in layout:
        item = {"c": p.cell.col, "r": p.cell.row, "kind": p.kind.shape.value}
        if p.kind.is_triangle:
            item["missing"] = p.kind.missing.value
        item["angle"] = p.angle
        items.append(item)
    return json.dumps({"n_cols": layout.n_cols, "n_rows": layout.n_rows, "plaquettes": items}, indent=1)


def layout_from_json(text: str) -> Layout:
    data = json.loads(text)
    plaq = {}
    for item in data["plaquettes"]:
        shape = Shape(item["kind"])
        kind = PlaquetteKind(shape, Corner(item["missing"]) if shape is Shape.TRIANGLE else None)
        cc = CellCoord(int(item["c"]), int(item["r"]))
        plaq[cc] = Plaquette(cc, kind, float(item.get("angle", 0.0)))
    return Layout(int(data["n_cols"]), int(data["n_rows"]), plaq)


def load_layout(path: str) -> Layout:
    with open(path) as fh:
        text = fh.read()
    if text.lstrip().startswith("{"):
        try:
            return layout_from_json(text)
        except (KeyError, ValueError, TypeError) as exc:
            raise LayoutParseError(f"invalid layout JSON: {exc}", 1, 1) from exc
    return parse_layout_text(text)
