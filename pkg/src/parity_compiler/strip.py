"""Compile one horizontal strip of plaquettes into a moment template.

A strip at plaquette row ``r`` covers qubit rows ``r`` (north) and ``r+1``
(south). Every constraint is decomposed into one horizontal ZZ gate on the
row its CNOTs point to, framed by vertical CNOTs on the columns where it is
closed. Vertical CNOTs live on qubit columns ("boundaries"), and the gates
needed at a boundary depend only on the two plaquettes touching it.

Template positions for parallelization distance ``d`` (``5d+1`` in total)::

    S_1..S_d | Z_0 M_0a M_0b Z_1 ... M_(d-1)a M_(d-1)b Z_d | E_1..E_d

``S``/``E`` hold the start/end CNOTs, ``Z_j`` the ZZ gates of cells with
``(c-1) mod (d+1) == j`` and ``M`` the mid-strip adjustment CNOTs.
"""
from __future__ import annotations

import enum
from dataclasses import dataclass, field
from typing import Sequence

from .circuit import CNOT, ZZ, Gate
from .lattice import Direction, Openness, Plaquette, QubitCoord, Side, forced_direction, side_openness

__all__ = [
    "BoundaryCase",
    "SlotKind",
    "Adjustment",
    "BoundaryPlan",
    "StripSchedule",
    "ScheduleError",
    "CASE_DEPTH",
    "assign_directions",
    "classify_boundary",
    "compile_strip",
    "template_size",
    "start_slot",
    "end_slot",
    "zz_slot",
    "mid_slot",
]


class ScheduleError(RuntimeError):
    pass


class BoundaryCase(enum.Enum):
    BOTH_CLOSED_SAME = "both_closed_same"
    BOTH_CLOSED_OPPOSITE = "both_closed_opposite"
    CLOSED_OPEN_OPPOSITE_DIR = "closed_open_opposite_dir"
    CLOSED_OPEN_SAME_DIR_CLOSED_FIRST = "closed_open_same_dir_closed_first"
    CLOSED_OPEN_SAME_DIR_OPEN_FIRST = "closed_open_same_dir_open_first"
    BOTH_OPEN = "both_open"


# strip depth at d=1 implied by each case (all template slots it forces)
CASE_DEPTH = {
    BoundaryCase.BOTH_OPEN: 0,
    BoundaryCase.BOTH_CLOSED_SAME: 4,
    BoundaryCase.CLOSED_OPEN_OPPOSITE_DIR: 4,
    BoundaryCase.CLOSED_OPEN_SAME_DIR_CLOSED_FIRST: 5,
    BoundaryCase.CLOSED_OPEN_SAME_DIR_OPEN_FIRST: 5,
    BoundaryCase.BOTH_CLOSED_OPPOSITE: 6,
}


class SlotKind(enum.Enum):
    START = "start"
    CLOSE = "close"  # mid CNOT right after the earlier ZZ
    OPEN = "open"  # mid CNOT right before the later ZZ
    END = "end"


@dataclass(frozen=True)
class Adjustment:
    kind: SlotKind
    direction: Direction


@dataclass(frozen=True)
class BoundaryPlan:
    case: BoundaryCase
    adjustments: tuple[Adjustment, ...]

    @property
    def n_cnots(self) -> int:
        return len(self.adjustments)


@dataclass(frozen=True)
class _Side:
    """One plaquette as seen from a boundary."""

    present: bool
    closed: bool = False
    direction: Direction | None = None


_ABSENT = _Side(False)


def _side_view(p: Plaquette | None, side: Side, direction: Direction | None) -> _Side:
    if p is None or p.kind.is_empty:
        return _ABSENT
    return _Side(True, side_openness(p.kind, side) is Openness.CLOSED, direction)


def classify_boundary(
    left: tuple[Plaquette | None, Direction | None],
    right: tuple[Plaquette | None, Direction | None],
    left_zz_first: bool = True,
) -> BoundaryPlan:
    """Case and CNOT adjustments at the qubit column between two plaquettes.

    ``left`` is the plaquette west of the boundary (seen on its right side),
    ``right`` the one east of it. Missing or empty plaquettes act as
    wildcards that never require extra gates. ``left_zz_first`` tells whether
    the western plaquette's ZZ gate runs before the eastern one's.
    """
    lv = _side_view(left[0], Side.RIGHT, left[1])
    rv = _side_view(right[0], Side.LEFT, right[1])
    if lv.present and lv.direction not in (Direction.UP, Direction.DOWN):
        raise ValueError("a present plaquette needs an UP/DOWN direction")
    if rv.present and rv.direction not in (Direction.UP, Direction.DOWN):
        raise ValueError("a present plaquette needs an UP/DOWN direction")

    if not (lv.present and rv.present):
        only = lv if lv.present else rv
        if only.present and only.closed:
            return _frame(BoundaryCase.CLOSED_OPEN_OPPOSITE_DIR, only.direction)
        return BoundaryPlan(BoundaryCase.BOTH_OPEN, ())

    first, second = (lv, rv) if left_zz_first else (rv, lv)
    if lv.closed and rv.closed:
        if lv.direction is rv.direction:
            return _frame(BoundaryCase.BOTH_CLOSED_SAME, lv.direction)
        return BoundaryPlan(
            BoundaryCase.BOTH_CLOSED_OPPOSITE,
            (
                Adjustment(SlotKind.START, first.direction),
                Adjustment(SlotKind.CLOSE, first.direction),
                Adjustment(SlotKind.OPEN, second.direction),
                Adjustment(SlotKind.END, second.direction),
            ),
        )
    if lv.closed or rv.closed:
        closed = lv if lv.closed else rv
        if lv.direction is not rv.direction:
            return _frame(BoundaryCase.CLOSED_OPEN_OPPOSITE_DIR, closed.direction)
        if first is closed:
            return BoundaryPlan(
                BoundaryCase.CLOSED_OPEN_SAME_DIR_CLOSED_FIRST,
                (Adjustment(SlotKind.START, closed.direction), Adjustment(SlotKind.CLOSE, closed.direction)),
            )
        return BoundaryPlan(
            BoundaryCase.CLOSED_OPEN_SAME_DIR_OPEN_FIRST,
            (Adjustment(SlotKind.OPEN, closed.direction), Adjustment(SlotKind.END, closed.direction)),
        )
    return BoundaryPlan(BoundaryCase.BOTH_OPEN, ())


def _frame(case: BoundaryCase, direction: Direction) -> BoundaryPlan:
    return BoundaryPlan(case, (Adjustment(SlotKind.START, direction), Adjustment(SlotKind.END, direction)))


# --- template geometry --------------------------------------------------------


def template_size(d: int) -> int:
    return 5 * d + 1


def start_slot(col: int, d: int) -> int:
    return (col - 1) % d


def zz_index(cell_col: int, d: int) -> int:
    return (cell_col - 1) % (d + 1)


def zz_slot(j: int, d: int) -> int:
    return d + 3 * j


def mid_slot(gap: int, second: bool, d: int) -> int:
    return d + 3 * gap + 1 + int(second)


def end_slot(col: int, d: int) -> int:
    return 4 * d + 1 + (col - 1) % d


def _mid_window(z_early: int, z_late: int, d: int) -> list[int]:
    return [mid_slot(g, s, d) for g in range(z_early, z_late) for s in (False, True)]


# --- direction assignment ---------------------------------------------------


def _boundary_cost(plan: BoundaryPlan) -> tuple[int, int]:
    return CASE_DEPTH[plan.case], plan.n_cnots


def assign_directions(plaquettes: Sequence[Plaquette], d: int = 1) -> list[Direction | None]:
    """Per-cell CNOT direction for one strip (``None`` for empty cells).

    Triangles take their forced direction. Each maximal run of squares gets
    one direction, chosen to minimise the worse end-boundary depth cost, then
    the adjustment CNOTs at both ends; ties go to ``UP``.
    """
    n = len(plaquettes)
    dirs: list[Direction | None] = [None] * n
    for i, p in enumerate(plaquettes):
        f = forced_direction(p.kind)
        if f in (Direction.UP, Direction.DOWN):
            dirs[i] = f
    i = 0
    while i < n:
        if not plaquettes[i].kind.is_square:
            i += 1
            continue
        j = i
        while j + 1 < n and plaquettes[j + 1].kind.is_square:
            j += 1
        best = None
        for cand in (Direction.UP, Direction.DOWN):
            costs = []
            # boundary west of the run: column i+1 (cells are 1-based i+1)
            west = plaquettes[i - 1] if i > 0 else None
            costs.append(
                _boundary_cost(
                    classify_boundary(
                        (west, dirs[i - 1] if i > 0 else None),
                        (plaquettes[i], cand),
                        _left_first(i, d),
                    )
                )
            )
            east = plaquettes[j + 1] if j + 1 < n else None
            costs.append(
                _boundary_cost(
                    classify_boundary(
                        (plaquettes[j], cand),
                        (east, dirs[j + 1] if j + 1 < n else None),
                        _left_first(j + 1, d),
                    )
                )
            )
            key = (max(c[0] for c in costs), sum(c[1] for c in costs))
            if best is None or key < best[0]:
                best = (key, cand)
        for k in range(i, j + 1):
            dirs[k] = best[1]
        i = j + 1
    return dirs


def _left_first(east_cell_index0: int, d: int) -> bool:
    """Whether the cell west of a boundary runs its ZZ first.

    ``east_cell_index0`` is the 0-based index of the cell east of the
    boundary (its 1-based column equals the boundary's qubit column).
    """
    col = east_cell_index0 + 1
    return zz_index(col - 1, d) < zz_index(col, d)


# --- schedule ---------------------------------------------------------------------


@dataclass
class StripSchedule:
    row: int
    d: int
    n_cols: int
    slots: list[list[Gate]]
    directions: list[Direction | None]
    plans: dict[int, BoundaryPlan] = field(default_factory=dict)

    @property
    def depth(self) -> int:
        return sum(1 for s in self.slots if s)

    @property
    def gates(self) -> list[Gate]:
        return [g for s in self.slots for g in s]

    def case_histogram(self) -> dict[str, int]:
        hist: dict[str, int] = {}
        for plan in self.plans.values():
            hist[plan.case.value] = hist.get(plan.case.value, 0) + 1
        return hist


def _cnot(col: int, north_row: int, direction: Direction) -> CNOT:
    north, south = QubitCoord(col, north_row), QubitCoord(col, north_row + 1)
    return CNOT(south, north) if direction is Direction.UP else CNOT(north, south)


def compile_strip(
    plaquettes: Sequence[Plaquette],
    row: int,
    d: int = 1,
    directions: Sequence[Direction | None] | None = None,
) -> StripSchedule:
    """Schedule one strip; ``plaquettes`` are the cells ``(1..n_cols-1, row)``."""
    if d < 1:
        raise ValueError("d must be >= 1")
    n_cells = len(plaquettes)
    n_cols = n_cells + 1
    dirs = list(directions) if directions is not None else assign_directions(plaquettes, d)
    slots: list[list[Gate]] = [[] for _ in range(template_size(d))]

    for i, p in enumerate(plaquettes):
        if p.kind.is_empty:
            continue
        c = i + 1
        zz_row = row if dirs[i] is Direction.UP else row + 1
        slots[zz_slot(zz_index(c, d), d)].append(ZZ(QubitCoord(c, zz_row), QubitCoord(c + 1, zz_row), p.angle))

    plans: dict[int, BoundaryPlan] = {}
    mids: list[tuple[int, Adjustment, list[int]]] = []
    for col in range(1, n_cols + 1):
        west = (plaquettes[col - 2], dirs[col - 2]) if col >= 2 else (None, None)
        east = (plaquettes[col - 1], dirs[col - 1]) if col <= n_cells else (None, None)
        if col >= 2 and col <= n_cells:
            zw, ze = zz_index(col - 1, d), zz_index(col, d)
        else:
            zw, ze = 0, 1
        plan = classify_boundary(west, east, zw < ze)
        plans[col] = plan
        for adj in plan.adjustments:
            if adj.kind is SlotKind.START:
                slots[start_slot(col, d)].append(_cnot(col, row, adj.direction))
            elif adj.kind is SlotKind.END:
                slots[end_slot(col, d)].append(_cnot(col, row, adj.direction))
            else:
                window = _mid_window(min(zw, ze), max(zw, ze), d)
                mids.append((col, adj, window))

    placement = _place_mid_cnots(mids, d)
    for (col, adj, _), slot in zip(mids, placement):
        slots[slot].append(_cnot(col, row, adj.direction))
    return StripSchedule(row, d, n_cols, slots, dirs, plans)


def _place_mid_cnots(mids: list[tuple[int, Adjustment, list[int]]], d: int) -> list[int]:
    """Pick a template slot for each mid CNOT.

    A CLOSE CNOT prefers the first slot of its window and an OPEN CNOT the
    last; when two vertical CNOTs closer than ``d`` columns would share a
    slot, the later one shifts to the nearest free slot of its window. At one
    column the CLOSE CNOT must precede the OPEN one. Falls back to a
    backtracking search if the greedy pass gets stuck.
    """
    if not mids:
        return []

    def prefs(k: int) -> list[int]:
        _, adj, window = mids[k]
        anchor = 0 if adj.kind is SlotKind.CLOSE else len(window) - 1
        return [window[i] for i in sorted(range(len(window)), key=lambda i: (abs(i - anchor), i))]

    chosen: list[int | None] = [None] * len(mids)

    def ok(k: int, slot: int) -> bool:
        col, adj, _ = mids[k]
        for j, s in enumerate(chosen):
            if s is None or j == k:
                continue
            other_col, other_adj, _ = mids[j]
            if other_col == col:
                if s == slot:
                    return False
                # CLOSE before OPEN at the same column
                if adj.kind is SlotKind.CLOSE and other_adj.kind is SlotKind.OPEN and not slot < s:
                    return False
                if adj.kind is SlotKind.OPEN and other_adj.kind is SlotKind.CLOSE and not s < slot:
                    return False
            elif s == slot and abs(other_col - col) < d:
                return False
        return True

    def search(k: int) -> bool:
        if k == len(mids):
            return True
        for slot in prefs(k):
            if ok(k, slot):
                chosen[k] = slot
                if search(k + 1):
                    return True
                chosen[k] = None
        return False

    if not search(0):
        raise ScheduleError("no distance-compatible placement for the mid-strip CNOTs")
    return [s for s in chosen]  # type: ignore[misc]
