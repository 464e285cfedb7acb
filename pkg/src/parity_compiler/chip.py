"""Full-chip assembly: strips, strip groups, orientation choice, line slicing."""
from __future__ import annotations

import enum
from collections import Counter
from dataclasses import dataclass
from typing import Sequence

from .circuit import (
    CNOT,
    RZ,
    ZZ,
    Axis,
    Circuit,
    CompileReport,
    Gate,
    cnot_depth,
    depth,
    naive_count,
    total_depth,
    two_qubit_count,
)
from .lattice import Layout, QubitCoord, transpose
from .strip import StripSchedule, compile_strip, template_size

__all__ = [
    "Orientation",
    "ScheduleParams",
    "MalformedCircuitError",
    "compile",
    "compile_oriented",
    "interleave_strips",
    "line_parallel_refine",
    "transpose_circuit",
    "build_report",
]


class Orientation(enum.Enum):
    AUTO = "auto"
    HORIZONTAL = "horizontal"
    VERTICAL = "vertical"

    @classmethod
    def parse(cls, text: str) -> "Orientation":
        aliases = {"h": cls.HORIZONTAL, "v": cls.VERTICAL}
        return aliases.get(text.lower()) or cls(text.lower())


class MalformedCircuitError(ValueError):
    pass


@dataclass(frozen=True)
class ScheduleParams:
    d: int = 1
    line_parallel: bool = False
    orientation: Orientation = Orientation.AUTO

    def __post_init__(self):
        if self.d < 1:
            raise ValueError(f"parallelization distance must be >= 1, got {self.d}")


def interleave_strips(
    schedules: Sequence[StripSchedule], d: int, n_cols: int | None = None, n_rows: int | None = None
) -> Circuit:
    """Run strips with equal ``row mod (d+1)`` side by side, groups in turn.

    Strips of one group share template positions; empty positions are dropped.
    """
    if n_cols is None:
        n_cols = max((s.n_cols for s in schedules), default=2)
    if n_rows is None:
        n_rows = max((s.row for s in schedules), default=1) + 1
    size = template_size(d)
    moments: list[list[Gate]] = []
    for g in range(d + 1):
        group = [s for s in schedules if s.row % (d + 1) == g]
        for k in range(size):
            merged = [gate for s in group for gate in s.slots[k]]
            if merged:
                moments.append(merged)
    return Circuit(n_cols, n_rows, moments)


def line_parallel_refine(circuit: Circuit) -> Circuit:
    """Split each moment into single-row (horizontal) or single-column (vertical) slices."""
    out: list[list[Gate]] = []
    for m in circuit.moments:
        two = m.two_qubit_gates
        axes = {g.axis for g in two}
        if len(axes) > 1:
            raise MalformedCircuitError("moment mixes horizontal and vertical gates")
        singles = [g for g in m.gates if isinstance(g, RZ)]
        if not two:
            out.append(list(m.gates))
            continue
        axis = axes.pop()
        key = (lambda g: g.qubits[0].row) if axis is Axis.HORIZONTAL else (lambda g: g.qubits[0].col)
        slices: dict[int, list[Gate]] = {}
        for g in two:
            slices.setdefault(key(g), []).append(g)
        for i, k in enumerate(sorted(slices)):
            out.append(slices[k] + (singles if i == 0 else []))
    return Circuit(circuit.n_cols, circuit.n_rows, out)


def _tq(q: QubitCoord) -> QubitCoord:
    return QubitCoord(q.row, q.col)


def transpose_circuit(circuit: Circuit) -> Circuit:
    moments = []
    for m in circuit.moments:
        gates: list[Gate] = []
        for g in m.gates:
            if isinstance(g, CNOT):
                gates.append(CNOT(_tq(g.control), _tq(g.target)))
            elif isinstance(g, ZZ):
                gates.append(ZZ(_tq(g.a), _tq(g.b), g.angle))
            else:
                gates.append(RZ(_tq(g.q), g.angle))
        moments.append(gates)
    return Circuit(circuit.n_rows, circuit.n_cols, moments)


@dataclass
class _Candidate:
    circuit: Circuit
    schedules: list[StripSchedule]
    orientation: Orientation


def _compile_horizontal(layout: Layout, params: ScheduleParams) -> tuple[Circuit, list[StripSchedule]]:
    schedules = [compile_strip(layout.strip(r), r, params.d) for r in range(1, layout.n_rows)]
    circuit = interleave_strips(schedules, params.d, layout.n_cols, layout.n_rows)
    if params.line_parallel:
        circuit = line_parallel_refine(circuit)
    return circuit, schedules


def compile_oriented(layout: Layout, params: ScheduleParams, orientation: Orientation) -> _Candidate:
    if orientation is Orientation.HORIZONTAL:
        circuit, schedules = _compile_horizontal(layout, params)
        return _Candidate(circuit, schedules, orientation)
    if orientation is Orientation.VERTICAL:
        circuit, schedules = _compile_horizontal(transpose(layout), params)
        return _Candidate(transpose_circuit(circuit), schedules, orientation)
    raise ValueError("orientation must be HORIZONTAL or VERTICAL here")


def build_report(layout: Layout, circuit: Circuit, params: ScheduleParams, orientation: str,
                 histogram: dict[str, int] | None = None, strategy: str = "main",
                 gate_set: str = "cnot_zz") -> CompileReport:
    naive = naive_count(layout, gate_set)
    count = two_qubit_count(circuit)
    return CompileReport(
        depth=depth(circuit),
        cnot_depth=cnot_depth(circuit),
        total_depth=total_depth(circuit),
        two_qubit_count=count,
        naive_count=naive,
        cancellation_rate=(naive - count) / naive if naive else 0.0,
        d=params.d,
        orientation=orientation,
        line_parallel=params.line_parallel,
        strategy=strategy,
        n_constraints=layout.n_constraints,
        boundary_case_histogram=dict(histogram or {}),
    )


def compile(layout: Layout, params: ScheduleParams | None = None) -> tuple[Circuit, CompileReport]:
    """Compile a layout; with ``AUTO`` orientation the shallower slicing wins (ties: horizontal)."""
    params = params or ScheduleParams()
    if params.orientation is Orientation.AUTO:
        h = compile_oriented(layout, params, Orientation.HORIZONTAL)
        v = compile_oriented(layout, params, Orientation.VERTICAL)
        best = v if depth(v.circuit) < depth(h.circuit) else h
    else:
        best = compile_oriented(layout, params, params.orientation)
    hist: Counter[str] = Counter()
    for s in best.schedules:
        hist.update(s.case_histogram())
    report = build_report(layout, best.circuit, params, best.orientation.value, dict(sorted(hist.items())))
    return best.circuit, report
