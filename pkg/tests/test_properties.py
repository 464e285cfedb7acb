"""Randomised properties over layouts drawn by hypothesis."""
import numpy as np
from hypothesis import HealthCheck, given, settings
from hypothesis import strategies as st

from parity_compiler.analysis import depth_bound, gate_bound
from parity_compiler.chip import Orientation, ScheduleParams, compile
from parity_compiler.circuit import from_json, from_qasm, to_cnot_rz, to_json, to_qasm, two_qubit_count, validate
from parity_compiler.lattice import (
    format_layout_text,
    layout_from_json,
    layout_to_json,
    parse_layout_text,
    transpose,
)
from parity_compiler.oracle import verify

CELL = st.sampled_from("Q.1234")


@st.composite
def layouts(draw, max_cols=4, max_rows=4):
    cols = draw(st.integers(1, max_cols - 1))
    rows = draw(st.integers(1, max_rows - 1))
    grid = ["".join(draw(st.lists(CELL, min_size=cols, max_size=cols))) for _ in range(rows)]
    lay = parse_layout_text("\n".join(grid))
    angles = draw(st.lists(st.floats(-3.1, 3.1, allow_nan=False), min_size=cols * rows, max_size=cols * rows))
    return lay.with_angles({p.cell: a for p, a in zip(lay, angles)})


SETTINGS = settings(max_examples=60, deadline=None, derandomize=True, suppress_health_check=[HealthCheck.too_slow])


@SETTINGS
@given(layouts(), st.integers(1, 3), st.booleans(), st.sampled_from(list(Orientation)))
def test_compiled_circuits_are_exact_and_valid(lay, d, line_parallel, orientation):
    params = ScheduleParams(d=d, line_parallel=line_parallel, orientation=orientation)
    circ, rep = compile(lay, params)
    assert verify(lay, circ).passed
    assert validate(circ, d, line_parallel) == []
    if not line_parallel:
        assert rep.depth <= depth_bound(d)


def _segments(lay):
    """Maximal runs of non-empty cells along the horizontal strips."""
    count = 0
    for r in range(1, lay.n_rows):
        kinds = [p.kind.is_empty for p in lay.strip(r)]
        count += sum(1 for i, e in enumerate(kinds) if not e and (i == 0 or kinds[i - 1]))
    return count


@SETTINGS
@given(layouts(max_cols=6, max_rows=5), st.integers(1, 3))
def test_count_bound_per_segment(lay, d):
    rep = compile(lay, ScheduleParams(d=d, orientation=Orientation.HORIZONTAL))[1]
    # 11/3 per constraint is an average; each segment adds at most one lone square's excess
    assert rep.two_qubit_count <= gate_bound(lay.n_constraints) + 4 / 3 * _segments(lay) + 1e-9


@SETTINGS
@given(layouts())
def test_cnot_rz_conversion_preserves_phases(lay):
    circ, _ = compile(lay)
    assert verify(lay, to_cnot_rz(circ)).passed


@SETTINGS
@given(layouts())
def test_layout_formats_round_trip(lay):
    assert layout_from_json(layout_to_json(lay)) == lay
    text_lay = parse_layout_text(format_layout_text(lay))
    assert [p.kind for p in text_lay] == [p.kind for p in lay]


@SETTINGS
@given(layouts())
def test_circuit_formats_round_trip(lay):
    circ, _ = compile(lay)
    assert from_json(to_json(circ)).moments == circ.moments
    back = from_qasm(to_qasm(circ))
    assert two_qubit_count(back) == two_qubit_count(circ)
    assert verify(lay, back).passed


@SETTINGS
@given(layouts())
def test_transpose_involution_and_depth_symmetry(lay):
    assert transpose(transpose(lay)) == lay
    assert compile(lay)[1].depth == compile(transpose(lay))[1].depth


@SETTINGS
@given(layouts(), st.data())
def test_any_single_deletion_is_detected(lay, data):
    circ, _ = compile(lay)
    if not len(circ):
        return
    k = data.draw(st.integers(0, len(circ) - 1))
    gates = circ.moments[k].gates
    g = gates[data.draw(st.integers(0, len(gates) - 1))]
    broken = circ.without_gate(k, g)
    # only a ZZ whose angle is a multiple of 2 pi may vanish unnoticed
    angle = getattr(g, "angle", None)
    if angle is not None and abs(np.angle(np.exp(1j * angle))) < 1e-9:
        return
    assert not verify(lay, broken).passed
