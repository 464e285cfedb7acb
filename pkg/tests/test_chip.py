import pytest

from parity_compiler.chip import (
    MalformedCircuitError,
    Orientation,
    ScheduleParams,
    compile,
    compile_oriented,
    interleave_strips,
    line_parallel_refine,
    transpose_circuit,
)
from parity_compiler.circuit import CNOT, ZZ, Axis, Circuit, cnot_depth, depth, two_qubit_count, validate
from parity_compiler.lattice import (
    QubitCoord as Q,
    gen_lhz,
    gen_random,
    gen_squares,
    parse_layout_text,
    randomize_angles,
    transpose,
)
from parity_compiler.oracle import verify
from parity_compiler.strip import compile_strip


@pytest.mark.parametrize("n", [3, 4, 5, 8, 12])
def test_square_layouts_depth_eight(n):
    circ, rep = compile(gen_squares(n, n))
    assert depth(circ) == rep.depth == 8


def test_tiny_square_layout():
    assert compile(gen_squares(2, 2))[1].depth == 3


@pytest.mark.parametrize("n, expected", [(3, 3), (4, 7), (5, 8), (6, 8), (8, 8)])
def test_lhz_depth(n, expected):
    assert compile(gen_lhz(n))[1].depth == expected


def test_lhz_verifies():
    lay = randomize_angles(gen_lhz(5), 3)
    assert verify(lay, compile(lay)[0]).passed
    big = randomize_angles(gen_lhz(9), 3)
    assert verify(big, compile(big)[0], mode="sampled", samples=2000).passed


def test_interleave_two_square_strips():
    lay = gen_squares(5, 3)
    scheds = [compile_strip(lay.strip(r), r, 1) for r in (1, 2)]
    assert depth(interleave_strips(scheds, 1, 5, 3)) == 8


def test_interleave_single_strip_matches_strip_depth():
    lay = parse_layout_text("Q32Q")
    s = compile_strip(lay.strip(1), 1, 1)
    assert depth(interleave_strips([s], 1, 5, 2)) == s.depth == 6


def test_five_strips_at_d2_form_three_groups():
    lay = gen_squares(4, 6)
    scheds = [compile_strip(lay.strip(r), r, 2) for r in range(1, 6)]
    c = interleave_strips(scheds, 2, 4, 6)
    assert depth(c) == 3 * scheds[0].depth
    assert validate(c, 2) == []


def test_line_parallel_refine_splits_columns():
    c = Circuit(5, 2, [[CNOT(Q(1, 2), Q(1, 1)), CNOT(Q(3, 2), Q(3, 1)), CNOT(Q(5, 2), Q(5, 1))]])
    out = line_parallel_refine(c)
    assert len(out) == 3
    assert all(len(m.gates) == 1 for m in out.moments)


def test_line_parallel_refine_keeps_single_gate_moments():
    c = Circuit(3, 3, [[ZZ(Q(1, 1), Q(2, 1), 0.1)], [CNOT(Q(1, 2), Q(1, 3))]])
    assert line_parallel_refine(c).moments == c.moments


def test_line_parallel_refine_rejects_mixed_axes():
    c = Circuit(4, 4, [[CNOT(Q(1, 1), Q(1, 2)), ZZ(Q(3, 3), Q(4, 3), 0.2)]])
    with pytest.raises(MalformedCircuitError):
        line_parallel_refine(c)


@pytest.mark.parametrize("d", [1, 2])
def test_line_parallel_compile(d):
    lay = randomize_angles(gen_random(5, 4, 0.5, 3), 1)
    circ, rep = compile(lay, ScheduleParams(d=d, line_parallel=True))
    assert rep.line_parallel
    assert validate(circ, d, line_parallel=True) == []
    assert verify(lay, circ).passed
    assert rep.depth >= compile(lay, ScheduleParams(d=d))[1].depth


def test_transpose_circuit_round_trip():
    c, _ = compile(gen_random(4, 5, 0.5, 1))
    t = transpose_circuit(c)
    assert (t.n_cols, t.n_rows) == (5, 4)
    assert transpose_circuit(t).moments == c.moments
    assert {g.axis for m in t.moments for g in m.two_qubit_gates} <= {Axis.HORIZONTAL, Axis.VERTICAL}


@pytest.mark.parametrize("orientation", [Orientation.HORIZONTAL, Orientation.VERTICAL])
def test_both_orientations_verify(orientation):
    lay = randomize_angles(gen_random(4, 5, 0.6, 8), 2)
    cand = compile_oriented(lay, ScheduleParams(), orientation)
    assert cand.orientation is orientation
    assert verify(lay, cand.circuit).passed
    assert validate(cand.circuit, 1) == []


def test_vertical_gates_in_vertical_compile():
    lay = gen_squares(3, 3)
    cand = compile_oriented(lay, ScheduleParams(), Orientation.VERTICAL)
    zz = [g for m in cand.circuit.moments for g in m.gates if isinstance(g, ZZ)]
    assert all(g.axis is Axis.VERTICAL for g in zz)


def test_auto_picks_shallower_orientation():
    for seed in range(10):
        lay = gen_random(6, 6, 0.5, seed)
        h = compile(lay, ScheduleParams(orientation=Orientation.HORIZONTAL))[1]
        v = compile(lay, ScheduleParams(orientation=Orientation.VERTICAL))[1]
        auto = compile(lay)[1]
        assert auto.depth == min(h.depth, v.depth)
        if h.depth <= v.depth:
            assert auto.orientation == "horizontal"


def test_transposed_layout_gives_mirrored_depths():
    lay = gen_random(5, 7, 0.5, 5)
    h = compile(lay, ScheduleParams(orientation=Orientation.HORIZONTAL))[1]
    tv = compile(transpose(lay), ScheduleParams(orientation=Orientation.VERTICAL))[1]
    assert h.depth == tv.depth


def test_orientation_parse():
    assert Orientation.parse("h") is Orientation.HORIZONTAL
    assert Orientation.parse("V") is Orientation.VERTICAL
    assert Orientation.parse("auto") is Orientation.AUTO
    with pytest.raises(ValueError):
        Orientation.parse("diagonal")


def test_params_reject_bad_d():
    with pytest.raises(ValueError):
        ScheduleParams(d=0)


def test_report_fields():
    lay = gen_random(6, 6, 0.5, 2)
    circ, rep = compile(lay, ScheduleParams(d=2))
    assert rep.d == 2
    assert rep.two_qubit_count == two_qubit_count(circ)
    assert rep.cnot_depth == cnot_depth(circ)
    assert rep.naive_count == 5 * lay.n_squares + 3 * lay.n_triangles
    assert rep.cancellation_rate == pytest.approx(1 - rep.two_qubit_count / rep.naive_count)
    assert rep.n_constraints == 25
    assert sum(rep.boundary_case_histogram.values()) > 0
    d = rep.to_dict()
    assert d["orientation"] in ("horizontal", "vertical")


@pytest.mark.parametrize("d", [1, 2, 3])
def test_empty_cells_compile(d):
    lay = randomize_angles(parse_layout_text("Q.3Q\n..Q4\n2Q..\n"), 6)
    circ, _ = compile(lay, ScheduleParams(d=d))
    assert verify(lay, circ).passed
    assert validate(circ, d) == []


def test_all_empty_layout_gives_empty_circuit():
    lay = parse_layout_text("..\n..\n")
    circ, rep = compile(lay)
    assert len(circ) == 0 and rep.cancellation_rate == 0.0
