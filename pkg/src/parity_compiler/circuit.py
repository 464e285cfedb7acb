"""Moment-based circuit representation for nearest-neighbour CNOT/ZZ/RZ circuits.

Gate conventions::

    CNOT(c, t)  = |0><0|_c 1_t + |1><1|_c X_t
    ZZ(a, b, a) = exp(i * angle * Z_a Z_b)
    RZ(q, th)   = exp(-i * th/2 * Z_q)

With these, ``ZZ(a, b, alpha) == CNOT(a, b) RZ(b, -2*alpha) CNOT(a, b)`` exactly.
"""
from __future__ import annotations

import enum
import itertools
import json
import math
import re
from dataclasses import dataclass, field
from typing import Iterable, Union

from .lattice import Layout, QubitCoord

__all__ = [
    "CNOT",
    "ZZ",
    "RZ",
    "Gate",
    "Axis",
    "Moment",
    "Circuit",
    "CompileReport",
    "UnsupportedGateError",
    "Violation",
    "depth",
    "total_depth",
    "cnot_depth",
    "two_qubit_count",
    "naive_count",
    "zz_to_rz_angle",
    "to_cnot_rz",
    "validate",
    "export",
    "to_qasm",
    "to_json",
    "from_json",
    "from_qasm",
    "load_circuit",
]


class UnsupportedGateError(TypeError):
    pass


class Axis(enum.Enum):
    HORIZONTAL = "horizontal"
    VERTICAL = "vertical"


def _axis(a: QubitCoord, b: QubitCoord) -> Axis:
    return Axis.HORIZONTAL if a.row == b.row else Axis.VERTICAL


@dataclass(frozen=True)
class CNOT:
    control: QubitCoord
    target: QubitCoord

    @property
    def qubits(self) -> tuple[QubitCoord, QubitCoord]:
        return (self.control, self.target)

    @property
    def axis(self) -> Axis:
        return _axis(self.control, self.target)


@dataclass(frozen=True)
class ZZ:
    a: QubitCoord
    b: QubitCoord
    angle: float

    @property
    def qubits(self) -> tuple[QubitCoord, QubitCoord]:
        return (self.a, self.b)

    @property
    def axis(self) -> Axis:
        return _axis(self.a, self.b)


@dataclass(frozen=True)
class RZ:
    q: QubitCoord
    angle: float

    @property
    def qubits(self) -> tuple[QubitCoord]:
        return (self.q,)


Gate = Union[CNOT, ZZ, RZ]
TWO_QUBIT = (CNOT, ZZ)


def _gate_sort_key(g: Gate):
    return (type(g).__name__, [tuple(q) for q in g.qubits])


@dataclass(frozen=True)
class Moment:
    gates: tuple[Gate, ...]

    def __init__(self, gates: Iterable[Gate]):
        object.__setattr__(self, "gates", tuple(sorted(gates, key=_gate_sort_key)))

    def __iter__(self):
        return iter(self.gates)

    def __len__(self):
        return len(self.gates)

    @property
    def two_qubit_gates(self) -> tuple[Gate, ...]:
        return tuple(g for g in self.gates if isinstance(g, TWO_QUBIT))

    @property
    def has_two_qubit(self) -> bool:
        return any(isinstance(g, TWO_QUBIT) for g in self.gates)

    @property
    def has_cnot(self) -> bool:
        return any(isinstance(g, CNOT) for g in self.gates)

    @property
    def has_zz(self) -> bool:
        return any(isinstance(g, ZZ) for g in self.gates)


@dataclass(frozen=True)
class Circuit:
    n_cols: int
    n_rows: int
    moments: tuple[Moment, ...] = ()

    def __init__(self, n_cols: int, n_rows: int, moments: Iterable[Moment | Iterable[Gate]] = ()):
        object.__setattr__(self, "n_cols", int(n_cols))
        object.__setattr__(self, "n_rows", int(n_rows))
        ms = []
        for m in moments:
            m = m if isinstance(m, Moment) else Moment(m)
            if len(m):
                ms.append(m)
        object.__setattr__(self, "moments", tuple(ms))

    def __len__(self):
        return len(self.moments)

    def gates(self) -> Iterable[Gate]:
        for m in self.moments:
            yield from m.gates

    def qubit_index(self, q: tuple[int, int]) -> int:
        return (q[0] - 1) + (q[1] - 1) * self.n_cols

    @property
    def n_qubits(self) -> int:
        return self.n_cols * self.n_rows

    def without_gate(self, moment_index: int, gate: Gate) -> "Circuit":
        ms = list(self.moments)
        gates = list(ms[moment_index].gates)
        gates.remove(gate)
        ms[moment_index] = Moment(gates)
        return Circuit(self.n_cols, self.n_rows, ms)


@dataclass
class CompileReport:
    depth: int
    cnot_depth: int
    total_depth: int
    two_qubit_count: int
    naive_count: int
    cancellation_rate: float
    d: int
    orientation: str
    line_parallel: bool = False
    strategy: str = "main"
    n_constraints: int = 0
    boundary_case_histogram: dict[str, int] = field(default_factory=dict)

    def to_dict(self) -> dict:
        return {
            "depth": self.depth,
            "cnot_depth": self.cnot_depth,
            "total_depth": self.total_depth,
            "two_qubit_count": self.two_qubit_count,
            "naive_count": self.naive_count,
            "cancellation_rate": self.cancellation_rate,
            "d": self.d,
            "orientation": self.orientation,
            "line_parallel": self.line_parallel,
            "strategy": self.strategy,
            "n_constraints": self.n_constraints,
            "boundary_case_histogram": dict(self.boundary_case_histogram),
        }


# --- metrics ---------------------------------------------------------------


def depth(circuit: Circuit) -> int:
    """Number of moments with at least one two-qubit gate."""
    return sum(m.has_two_qubit for m in circuit.moments)


def total_depth(circuit: Circuit) -> int:
    return len(circuit.moments)


def cnot_depth(circuit: Circuit) -> int:
    """Two-qubit depth once every ZZ has been expanded into CNOT+RZ."""
    return sum(m.has_cnot for m in to_cnot_rz(circuit).moments)


def two_qubit_count(circuit: Circuit) -> int:
    return sum(isinstance(g, TWO_QUBIT) for g in circuit.gates())


def naive_count(layout: Layout, gate_set: str = "cnot_zz") -> int:
    """Two-qubit gates needed when every constraint is compiled on its own.

    ``cnot_zz``: 5 per square, 3 per triangle. ``cnot_rz``: the ZZ is itself
    expanded, giving 6 and 4.
    """
    if gate_set not in ("cnot_zz", "cnot_rz"):
        raise ValueError(f"unknown gate set {gate_set!r}")
    extra = 1 if gate_set == "cnot_rz" else 0
    return (5 + extra) * layout.n_squares + (3 + extra) * layout.n_triangles


# --- gate-set conversion ---------------------------------------------------


def zz_to_rz_angle(alpha: float) -> float:
    return -2.0 * alpha


def to_cnot_rz(circuit: Circuit) -> Circuit:
    out: list[list[Gate]] = []
    for m in circuit.moments:
        for g in m.gates:
            if not isinstance(g, (CNOT, ZZ, RZ)):
                raise UnsupportedGateError(f"cannot convert {g!r}")
        if not m.has_zz:
            out.append(list(m.gates))
            continue
        first, middle, last, rest = [], [], [], []
        for g in m.gates:
            if isinstance(g, ZZ):
                first.append(CNOT(g.a, g.b))
                middle.append(RZ(g.b, zz_to_rz_angle(g.angle)))
                last.append(CNOT(g.a, g.b))
            else:
                rest.append(g)
        if rest:
            out.append(rest)
        out.extend([first, middle, last])
    return Circuit(circuit.n_cols, circuit.n_rows, out)


# --- validation ------------------------------------------------------------


@dataclass(frozen=True)
class Violation:
    moment: int
    kind: str
    detail: str

    def __str__(self) -> str:
        return f"moment {self.moment}: {self.kind}: {self.detail}"


def _min_distance(g: Gate, h: Gate) -> float:
    return min(math.hypot(p.col - q.col, p.row - q.row) for p in g.qubits for q in h.qubits)


def validate(circuit: Circuit, d: int = 1, line_parallel: bool = False) -> list[Violation]:
    """List every hardware-rule violation; empty means the circuit is valid.

    The distance rule and the line rule constrain two-qubit gates only; RZ
    gates merely have to avoid sharing qubits.
    """
    if d < 1:
        raise ValueError("d must be >= 1")
    out: list[Violation] = []
    for k, m in enumerate(circuit.moments):
        seen: dict[QubitCoord, Gate] = {}
        for g in m.gates:
            for q in g.qubits:
                if not (1 <= q.col <= circuit.n_cols and 1 <= q.row <= circuit.n_rows):
                    out.append(Violation(k, "out-of-grid", f"{g} touches {tuple(q)}"))
                if q in seen:
                    out.append(Violation(k, "shared-qubit", f"{seen[q]} and {g} share {tuple(q)}"))
                seen[q] = g
            if isinstance(g, TWO_QUBIT):
                a, b = g.qubits
                if abs(a.col - b.col) + abs(a.row - b.row) != 1:
                    out.append(Violation(k, "not-nearest-neighbour", str(g)))
        two = m.two_qubit_gates
        if len({type(g) for g in two}) > 1:
            out.append(Violation(k, "mixed-gate-types", ", ".join(sorted({type(g).__name__ for g in two}))))
        if len({g.axis for g in two}) > 1:
            out.append(Violation(k, "mixed-axes", "horizontal and vertical gates in one moment"))
        if d > 1 or line_parallel:
            for g, h in itertools.combinations(two, 2):
                if set(g.qubits) & set(h.qubits):
                    continue  # already reported
                dist = _min_distance(g, h)
                if dist < d - 1e-12:
                    out.append(Violation(k, "too-close", f"{g} and {h} are {dist:.3f} apart (< {d})"))
        if line_parallel and two:
            qs = [q for g in two for q in g.qubits]
            if len({q.row for q in qs}) > 1 and len({q.col for q in qs}) > 1:
                out.append(Violation(k, "not-collinear", f"{len(two)} gates span several rows and columns"))
    return out


# --- export / import -------------------------------------------------------


def _gate_to_dict(g: Gate) -> dict:
    if isinstance(g, CNOT):
        return {"type": "cnot", "qubits": [list(g.control), list(g.target)]}
    if isinstance(g, ZZ):
        return {"type": "zz", "qubits": [list(g.a), list(g.b)], "angle": g.angle}
    if isinstance(g, RZ):
        return {"type": "rz", "qubits": [list(g.q)], "angle": g.angle}
    raise UnsupportedGateError(repr(g))


def _gate_from_dict(item: dict) -> Gate:
    qs = [QubitCoord(int(q[0]), int(q[1])) for q in item["qubits"]]
    kind = item["type"]
    if kind == "cnot":
        return CNOT(qs[0], qs[1])
    if kind == "zz":
        return ZZ(qs[0], qs[1], float(item["angle"]))
    if kind == "rz":
        return RZ(qs[0], float(item["angle"]))
    raise UnsupportedGateError(f"unknown gate type {kind!r}")


def to_json(circuit: Circuit) -> str:
    data = {
        "n_cols": circuit.n_cols,
        "n_rows": circuit.n_rows,
        "moments": [[_gate_to_dict(g) for g in m.gates] for m in circuit.moments],
    }
    return json.dumps(data)


def from_json(text: str) -> Circuit:
    data = json.loads(text)
    moments = [[_gate_from_dict(item) for item in m] for m in data["moments"]]
    return Circuit(data["n_cols"], data["n_rows"], moments)


_ZZ_GATE_DEF = "gate zzp(alpha) a,b { cx a,b; rz(-2*alpha) b; cx a,b; }"


def to_qasm(circuit: Circuit) -> str:
    """OpenQASM 2.0 text; one barrier-delimited group per moment.

    ZZ gates are emitted through the ``zzp`` gate, defined by its CNOT+RZ
    expansion. Note qelib1's ``rz`` differs from :class:`RZ` by a global phase.
    """
    n = circuit.n_qubits
    lines = [
        "OPENQASM 2.0;",
        'include "qelib1.inc";',
        f"// grid {circuit.n_cols}x{circuit.n_rows}, qubit index = (col-1) + (row-1)*{circuit.n_cols}",
        _ZZ_GATE_DEF,
        f"qreg q[{n}];",
    ]
    idx = circuit.qubit_index
    for k, m in enumerate(circuit.moments):
        if k:
            lines.append("barrier q;")
        for g in m.gates:
            if isinstance(g, CNOT):
                lines.append(f"cx q[{idx(g.control)}],q[{idx(g.target)}];")
            elif isinstance(g, ZZ):
                lines.append(f"zzp({g.angle!r}) q[{idx(g.a)}],q[{idx(g.b)}];")
            elif isinstance(g, RZ):
                lines.append(f"rz({g.angle!r}) q[{idx(g.q)}];")
            else:
                raise UnsupportedGateError(repr(g))
    return "\n".join(lines) + "\n"


_QASM_GRID = re.compile(r"//\s*grid\s+(\d+)x(\d+)")
_QASM_GATE = re.compile(r"^(cx|zzp|rz)(?:\(([^)]*)\))?\s+(.+);$")
_QASM_QUBIT = re.compile(r"q\[(\d+)\]")


def from_qasm(text: str, n_cols: int | None = None, n_rows: int | None = None) -> Circuit:
    """Read back the OpenQASM dialect written by :func:`to_qasm`."""
    m = _QASM_GRID.search(text)
    if m:
        n_cols, n_rows = int(m.group(1)), int(m.group(2))
    if n_cols is None or n_rows is None:
        raise ValueError("grid size unknown: missing '// grid CxR' comment")

    def coord(i: int) -> QubitCoord:
        return QubitCoord(i % n_cols + 1, i // n_cols + 1)

    moments: list[list[Gate]] = [[]]
    for raw in text.splitlines():
        line = raw.strip()
        if not line or line.startswith(("//", "OPENQASM", "include", "gate ", "qreg", "creg")):
            continue
        if line.startswith("barrier"):
            moments.append([])
            continue
        gm = _QASM_GATE.match(line)
        if not gm:
            raise ValueError(f"unsupported QASM statement: {line!r}")
        name, arg, operands = gm.groups()
        qs = [coord(int(i)) for i in _QASM_QUBIT.findall(operands)]
        if name == "cx":
            moments[-1].append(CNOT(qs[0], qs[1]))
        elif name == "zzp":
            moments[-1].append(ZZ(qs[0], qs[1], float(arg)))
        else:
            moments[-1].append(RZ(qs[0], float(arg)))
    return Circuit(n_cols, n_rows, moments)


def export(circuit: Circuit, fmt: str = "json") -> str:
    fmt = fmt.lower()
    if fmt == "json":
        return to_json(circuit)
    if fmt == "qasm":
        return to_qasm(circuit)
    raise ValueError(f"unknown export format {fmt!r}")


def load_circuit(path: str) -> Circuit:
    with open(path) as fh:
        text = fh.read()
    if text.lstrip().startswith("{"):
        return from_json(text)
    return from_qasm(text)
