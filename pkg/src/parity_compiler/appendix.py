"""Constant-depth CNOT+RZ circuits for square-only layouts.

The cells split into four classes by the parity of their column and row
index; cells of one class never share a qubit. For each class a CNOT network
gathers every plaquette parity onto the cell's SE qubit, one RZ layer applies
all rotations of the class, and the network moves on to the next class. With

* ``H_a``: CNOTs ``(c, r) -> (c+1, r)`` for every ``c`` with ``(c-1) % 2 == a``
* ``V_b``: CNOTs ``(c, r) -> (c, r+1)`` for every ``r`` with ``(r-1) % 2 == b``

full H and V layers commute as linear maps, so moving between classes that
differ in one index costs two CNOT layers. Visiting the classes in the order
``(0,0) (1,0) (1,1) (0,1)`` gives::

    V0 H0' | RZ | H0' H1 | RZ | V0 V1 | RZ | H1 H0 | RZ | H0 V1

which is 10 CNOT layers and 4 rotation layers at any grid size. ``H0'`` is
``H0`` restricted to the rows that receive a rotation in the first class.
"""
from __future__ import annotations

import math

from .circuit import CNOT, RZ, Circuit, Gate, zz_to_rz_angle
from .lattice import Layout, QubitCoord

__all__ = ["UnsupportedLayoutError", "compile_squares_alt", "alt_vs_main_counts", "alt_gate_count"]


class UnsupportedLayoutError(ValueError):
    pass


def _h_layer(layout: Layout, a: int, rows) -> list[Gate]:
    return [
        CNOT(QubitCoord(c, r), QubitCoord(c + 1, r))
        for r in rows
        for c in range(1, layout.n_cols)
        if (c - 1) % 2 == a
    ]


def _v_layer(layout: Layout, b: int) -> list[Gate]:
    return [
        CNOT(QubitCoord(c, r), QubitCoord(c, r + 1))
        for c in range(1, layout.n_cols + 1)
        for r in range(1, layout.n_rows)
        if (r - 1) % 2 == b
    ]


def _rotations(layout: Layout, a: int, b: int) -> list[Gate]:
    out = []
    for p in layout:
        c, r = p.cell
        if (c - 1) % 2 == a and (r - 1) % 2 == b and not p.kind.is_empty:
            out.append(RZ(QubitCoord(c + 1, r + 1), zz_to_rz_angle(p.angle)))
    return out


def compile_squares_alt(layout: Layout, trim: bool = False) -> Circuit:
    """Compile a square-only layout (empty cells allowed) into CNOT+RZ.

    ``trim=True`` also restricts the H layers around the last rotation layer
    to the rows that carry rotations, which removes further gates without
    changing the depth.
    """
    bad = [p.cell for p in layout if p.kind.is_triangle]
    if bad:
        raise UnsupportedLayoutError(f"only square plaquettes are supported; triangles at {bad[:3]}")
    all_rows = range(1, layout.n_rows + 1)
    # rows that receive rotations when the vertical class is b
    target_rows = {b: [r + 1 for r in range(1, layout.n_rows) if (r - 1) % 2 == b] for b in (0, 1)}
    h0_first = _h_layer(layout, 0, target_rows[0])
    h0_last = _h_layer(layout, 0, target_rows[1] if trim else all_rows)
    h0 = _h_layer(layout, 0, all_rows)
    h1 = _h_layer(layout, 1, all_rows)
    v0, v1 = _v_layer(layout, 0), _v_layer(layout, 1)
    moments = [
        v0, h0_first, _rotations(layout, 0, 0),
        h0_first, h1, _rotations(layout, 1, 0),
        v0, v1, _rotations(layout, 1, 1),
        h1, h0_last if trim else h0, _rotations(layout, 0, 1),
        h0_last, v1,
    ]
    return Circuit(layout.n_cols, layout.n_rows, moments)


def alt_gate_count(n_constraints: int) -> float:
    return 4.5 * n_constraints + 4 * math.sqrt(n_constraints)


def alt_vs_main_counts(n: int) -> tuple[float, float]:
    """Closed-form two-qubit counts on an n x n square layout: (this method, strip method in CNOT+RZ)."""
    if n < 3:
        raise ValueError("n must be >= 3")
    nc = (n - 1) ** 2
    return alt_gate_count(nc), 4 * nc + math.sqrt(nc)
