"""Exact verification of CNOT/ZZ/RZ circuits against plaquette phase targets.

CNOT permutes computational basis states and ZZ/RZ are diagonal, so a circuit
acts on ``|s>`` as ``exp(i*phase) |s'>``. Tracking ``(s', phase)`` per basis
state checks the full unitary without ever building it.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from typing import NamedTuple

import numpy as np

from .circuit import CNOT, RZ, ZZ, Circuit, UnsupportedGateError
from .lattice import Layout

__all__ = [
    "PhaseOutcome",
    "VerifyReport",
    "ResourceError",
    "MAX_EXHAUSTIVE_QUBITS",
    "target_phase",
    "propagate",
    "target_phases",
    "propagate_batch",
    "verify",
]

MAX_EXHAUSTIVE_QUBITS = 24
PHASE_TOL = 1e-9
_CHUNK = 1 << 16


class ResourceError(RuntimeError):
    pass


class PhaseOutcome(NamedTuple):
    out_state: int
    phase: float


def _bit(s: int, i: int) -> int:
    return (s >> i) & 1


def target_phase(layout: Layout, s: int) -> float:
    """Sum over constraints of ``angle * prod((-1)**bit)``."""
    total = 0.0
    for p in layout.constraints():
        parity = 0
        for q in p.qubits():
            parity ^= _bit(s, layout.qubit_index(q))
        total += p.angle * (-1 if parity else 1)
    return total


def propagate(circuit: Circuit, s: int) -> PhaseOutcome:
    idx = circuit.qubit_index
    phase = 0.0
    for g in circuit.gates():
        if isinstance(g, CNOT):
            if _bit(s, idx(g.control)):
                s ^= 1 << idx(g.target)
        elif isinstance(g, ZZ):
            sign = -1 if _bit(s, idx(g.a)) ^ _bit(s, idx(g.b)) else 1
            phase += g.angle * sign
        elif isinstance(g, RZ):
            sign = -1 if _bit(s, idx(g.q)) else 1
            phase += -0.5 * g.angle * sign
        else:
            raise UnsupportedGateError(repr(g))
    return PhaseOutcome(s, phase)


# --- vectorized engine -------------------------------------------------------


def _states_to_bits(states: np.ndarray, n_qubits: int) -> np.ndarray:
    states = np.asarray(states, dtype=np.uint64)
    shifts = np.arange(n_qubits, dtype=np.uint64)
    return ((states[:, None] >> shifts[None, :]) & np.uint64(1)).astype(bool)


def target_phases(layout: Layout, bits: np.ndarray) -> np.ndarray:
    """Vectorized :func:`target_phase` for a ``(batch, n_qubits)`` bit array."""
    out = np.zeros(bits.shape[0])
    for p in layout.constraints():
        cols = [layout.qubit_index(q) for q in p.qubits()]
        parity = np.bitwise_xor.reduce(bits[:, cols], axis=1)
        out += p.angle * (1.0 - 2.0 * parity)
    return out


def propagate_batch(circuit: Circuit, bits: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    """Apply the circuit to every row of ``bits``; returns ``(out_bits, phases)``."""
    bits = bits.copy()
    phase = np.zeros(bits.shape[0])
    idx = circuit.qubit_index
    for g in circuit.gates():
        if isinstance(g, CNOT):
            bits[:, idx(g.target)] ^= bits[:, idx(g.control)]
        elif isinstance(g, ZZ):
            phase += g.angle * (1.0 - 2.0 * (bits[:, idx(g.a)] ^ bits[:, idx(g.b)]))
        elif isinstance(g, RZ):
            phase += -0.5 * g.angle * (1.0 - 2.0 * bits[:, idx(g.q)])
        else:
            raise UnsupportedGateError(repr(g))
    return bits, phase


def _phase_error(a: np.ndarray, b: np.ndarray) -> np.ndarray:
    diff = np.mod(a - b + math.pi, 2 * math.pi) - math.pi
    return np.abs(diff)


@dataclass
class VerifyReport:
    passed: bool
    n_qubits: int
    checked: int
    mode: str
    max_phase_error: float = 0.0
    counterexample: int | None = None
    reason: str = ""
    out_state: int | None = None

    def __bool__(self) -> bool:
        return self.passed

    def to_dict(self) -> dict:
        return {
            "passed": self.passed,
            "n_qubits": self.n_qubits,
            "checked": self.checked,
            "mode": self.mode,
            "max_phase_error": self.max_phase_error,
            "counterexample": self.counterexample,
            "out_state": self.out_state,
            "reason": self.reason,
        }


def _bits_to_int(row: np.ndarray) -> int:
    return int(sum(1 << i for i, b in enumerate(row) if b))


def verify(
    layout: Layout,
    circuit: Circuit,
    mode: str = "exhaustive",
    samples: int = 4096,
    seed: int = 0,
    tol: float = PHASE_TOL,
) -> VerifyReport:
    """Check ``circuit`` implements ``prod_c exp(i angle_c Z..Z)`` state by state.

    ``mode`` is ``"exhaustive"`` (all ``2**N`` states, ``N <= 24``) or
    ``"sampled"`` (``samples`` uniformly drawn states). The lowest-index
    counterexample is reported.
    """
    if (layout.n_cols, layout.n_rows) != (circuit.n_cols, circuit.n_rows):
        raise ValueError("layout and circuit grids differ")
    n = layout.n_qubits
    if mode == "exhaustive":
        if n > MAX_EXHAUSTIVE_QUBITS:
            raise ResourceError(f"exhaustive check of {n} qubits exceeds the {MAX_EXHAUSTIVE_QUBITS}-qubit guard")
        chunks = (
            _states_to_bits(np.arange(start, min(start + _CHUNK, 1 << n), dtype=np.uint64), n)
            for start in range(0, 1 << n, _CHUNK)
        )
    elif mode == "sampled":
        rng = np.random.default_rng(seed)
        drawn = rng.integers(0, 2, size=(samples, n)).astype(bool)
        chunks = (drawn[i : i + _CHUNK] for i in range(0, samples, _CHUNK))
    else:
        raise ValueError(f"unknown mode {mode!r}")

    checked = 0
    worst = 0.0
    for bits in chunks:
        out, phase = propagate_batch(circuit, bits)
        moved = np.any(out != bits, axis=1)
        err = _phase_error(phase, target_phases(layout, bits))
        bad = moved | (err > tol)
        if not moved.any():
            worst = max(worst, float(err.max(initial=0.0)))
        if bad.any():
            i = int(np.argmax(bad))
            state = _bits_to_int(bits[i])
            if moved[i]:
                reason = "basis state not restored (CNOT network is not the identity)"
            else:
                reason = f"phase error {err[i]:.3e} exceeds {tol:g}"
            return VerifyReport(
                False, n, checked + i + 1, mode, float(err[i]), state, reason, _bits_to_int(out[i])
            )
        checked += bits.shape[0]
    return VerifyReport(True, n, checked, mode, worst)
