"""Low-depth circuits for three- and four-body parity plaquette constraints."""
from .lattice import (
    CellCoord,
    Corner,
    Direction,
    Layout,
    Plaquette,
    PlaquetteKind,
    QubitCoord,
    gen_lhz,
    gen_random,
    gen_squares,
    load_layout,
    parse_layout_text,
    transpose,
)
from .circuit import CNOT, RZ, ZZ, Circuit, CompileReport, Moment, depth, export, to_cnot_rz, two_qubit_count, validate
from .chip import Orientation, ScheduleParams, compile
from .oracle import verify
from .appendix import compile_squares_alt
from .analysis import BenchConfig, depth_bound, gate_bound, gen_adversarial, run_bench

__version__ = "0.1.0"

__all__ = [
    "CellCoord",
    "Corner",
    "Direction",
    "Layout",
    "Plaquette",
    "PlaquetteKind",
    "QubitCoord",
    "gen_lhz",
    "gen_random",
    "gen_squares",
    "load_layout",
    "parse_layout_text",
    "transpose",
    "CNOT",
    "RZ",
    "ZZ",
    "Circuit",
    "CompileReport",
    "Moment",
    "depth",
    "export",
    "to_cnot_rz",
    "two_qubit_count",
    "validate",
    "Orientation",
    "ScheduleParams",
    "compile",
    "verify",
    "compile_squares_alt",
    "BenchConfig",
    "depth_bound",
    "gate_bound",
    "gen_adversarial",
    "run_bench",
]
