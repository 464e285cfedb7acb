"""Command-line front end.

Exit codes: 0 success, 1 verification failure, 2 input error,
3 unsupported request.
"""
from __future__ import annotations

import argparse
import json
import logging
import os
import re
import sys
from pathlib import Path

from . import analysis
from .appendix import UnsupportedLayoutError, compile_squares_alt
from .chip import Orientation, ScheduleParams, build_report, compile
from .circuit import export, load_circuit, validate
from .lattice import (
    Layout,
    LayoutParseError,
    format_layout_text,
    gen_lhz,
    gen_random,
    gen_squares,
    layout_to_json,
    load_layout,
)
from .oracle import MAX_EXHAUSTIVE_QUBITS, verify

log = logging.getLogger("parity_compiler")

EXIT_OK, EXIT_VERIFY_FAIL, EXIT_INPUT, EXIT_UNSUPPORTED = 0, 1, 2, 3


class InputError(Exception):
    pass


class Unsupported(Exception):
    pass


_GEN_PATTERNS = {
    "squares": re.compile(r"^squares:(\d+)x(\d+)$"),
    "lhz": re.compile(r"^lhz:(\d+)$"),
    "random": re.compile(r"^random:(\d+)x(\d+):([0-9.eE+-]+):(\d+)$"),
}


def parse_gen_spec(spec: str) -> tuple[Layout, dict]:
    """Build a layout from ``squares:NxM``, ``lhz:N`` or ``random:NxM:r3:seed``.

    Also returns reference-count arguments for generators that have them.
    """
    if m := _GEN_PATTERNS["squares"].match(spec):
        n, k = int(m[1]), int(m[2])
        if n < 2 or k < 2:
            raise InputError("squares grid must be at least 2x2 qubits")
        return gen_squares(n, k), {"kind": "squares", "n": n, "m": k}
    if m := _GEN_PATTERNS["lhz"].match(spec):
        n = int(m[1])
        if n < 3:
            raise InputError("lhz needs at least 3 logical spins")
        return gen_lhz(n), {"kind": "lhz", "n": n}
    if m := _GEN_PATTERNS["random"].match(spec):
        n, k, seed = int(m[1]), int(m[2]), int(m[4])
        try:
            r3 = float(m[3])
        except ValueError:
            raise InputError(f"bad r3 in {spec!r}") from None
        if n < 2 or k < 2 or not 0.0 <= r3 <= 1.0:
            raise InputError(f"bad random spec {spec!r}: need grid >= 2x2 and 0 <= r3 <= 1")
        return gen_random(n, k, r3, seed), {}
    raise InputError(f"unrecognised generator spec {spec!r} (squares:NxM, lhz:N, random:NxM:r3:seed)")


def _load(args) -> tuple[Layout, dict]:
    if args.gen:
        return parse_gen_spec(args.gen)
    try:
        return load_layout(args.layout), {}
    except LayoutParseError as exc:
        raise InputError(f"{args.layout}: {exc}") from exc
    except OSError as exc:
        raise InputError(str(exc)) from exc


def _write(path: str | None, text: str) -> None:
    if path is None or path == "-":
        sys.stdout.write(text if text.endswith("\n") else text + "\n")
    else:
        Path(path).write_text(text)
        log.info("wrote %s", path)


def _params(args) -> ScheduleParams:
    try:
        return ScheduleParams(d=args.d, line_parallel=args.line_parallel, orientation=Orientation.parse(args.orientation))
    except ValueError as exc:
        raise InputError(str(exc)) from exc


def _compile(layout: Layout, args):
    params = _params(args)
    if args.strategy == "appendix-a":
        if params.d != 1 or params.line_parallel:
            raise Unsupported("appendix-a supports only d=1 without --line-parallel")
        try:
            circuit = compile_squares_alt(layout)
        except UnsupportedLayoutError as exc:
            raise Unsupported(str(exc)) from exc
        report = build_report(layout, circuit, params, "n/a", strategy="appendix-a", gate_set="cnot_rz")
        return circuit, report, params
    circuit, report = compile(layout, params)
    return circuit, report, params


def run_compile(args) -> int:
    layout, ref = _load(args)
    circuit, report, params = _compile(layout, args)
    problems = validate(circuit, params.d, params.line_parallel)
    if problems:
        # a compiler bug, never expected
        for v in problems[:10]:
            log.error("%s", v)
        return EXIT_VERIFY_FAIL
    out = report.to_dict()
    if args.strategy == "appendix-a":
        ref = {"kind": "appendix_alt", "n_constraints": layout.n_constraints}
    if ref:
        kind = ref.pop("kind")
        out["reference"] = analysis.reconcile(kind, report.two_qubit_count, **ref)
    if args.out:
        _write(args.out, export(circuit, args.emit))
    text = json.dumps(out, indent=2)
    if args.report:
        _write(args.report, text)
    print(text)
    return EXIT_OK


def run_verify(args) -> int:
    layout, _ = _load(args)
    if args.circuit:
        try:
            circuit = load_circuit(args.circuit)
        except (OSError, ValueError, KeyError) as exc:
            raise InputError(f"{args.circuit}: {exc}") from exc
        d, lp = args.d, args.line_parallel
    else:
        circuit, _, params = _compile(layout, args)
        d, lp = params.d, params.line_parallel
    mode = args.mode
    if mode == "auto":
        mode = "exhaustive" if layout.n_qubits <= MAX_EXHAUSTIVE_QUBITS else "sampled"
    try:
        result = verify(layout, circuit, mode=mode, samples=args.samples, seed=args.seed)
    except ValueError as exc:
        raise InputError(str(exc)) from exc
    problems = validate(circuit, d, lp)
    out = result.to_dict()
    out["violations"] = [str(v) for v in problems]
    print(json.dumps(out, indent=2))
    return EXIT_OK if result.passed and not problems else EXIT_VERIFY_FAIL


def _int_list(text: str) -> list[int]:
    try:
        return [int(x) for x in text.split(",") if x.strip()]
    except ValueError:
        raise InputError(f"expected comma-separated integers, got {text!r}") from None


def _float_list(text: str) -> list[float]:
    try:
        return [float(x) for x in text.split(",") if x.strip()]
    except ValueError:
        raise InputError(f"expected comma-separated numbers, got {text!r}") from None


def run_bench(args) -> int:
    data: dict = {}
    if args.config:
        try:
            data = json.loads(Path(args.config).read_text())
        except (OSError, ValueError) as exc:
            raise InputError(f"{args.config}: {exc}") from exc
    # explicit flags override the config file
    if args.sizes is not None:
        data["sizes"] = _int_list(args.sizes)
    if args.r3 is not None:
        data["r3_values"] = _float_list(args.r3)
    for key in ("d", "samples", "seed", "jobs"):
        if getattr(args, key) is not None:
            data[key] = getattr(args, key)
    data.setdefault("r3_values", [0.0, 0.5, 1.0])
    if "sizes" not in data:
        raise InputError("bench needs --sizes or a config with 'sizes'")
    try:
        config = analysis.BenchConfig.from_dict(data)
    except (ValueError, TypeError, KeyError) as exc:
        raise InputError(f"invalid bench config: {exc}") from exc
    rows = analysis.run_bench(config)
    for msg in analysis.bench_violations(rows):
        log.warning("bound violated: %s", msg)
    _write(args.out, analysis.rows_to_csv(rows))
    if args.out and args.out != "-" and not args.no_figures:
        from .plotting import write_figures

        for path in write_figures(rows, args.out):
            log.info("wrote %s", path)
    return EXIT_OK


def run_gen(args) -> int:
    layout, _ = parse_gen_spec(args.gen)
    fmt = args.format
    if fmt == "auto":
        fmt = "json" if args.out and args.out.endswith(".json") else "text"
    _write(args.out, layout_to_json(layout) if fmt == "json" else format_layout_text(layout))
    return EXIT_OK


def _add_source(p: argparse.ArgumentParser) -> None:
    src = p.add_mutually_exclusive_group(required=True)
    src.add_argument("--layout", help="layout file (text grid or JSON)")
    src.add_argument("--gen", help="generator: squares:NxM, lhz:N, random:NxM:r3:seed")


def _add_params(p: argparse.ArgumentParser) -> None:
    p.add_argument("--d", type=int, default=1, help="parallelization distance (default 1)")
    p.add_argument("--line-parallel", action="store_true", help="one row or column per moment")
    p.add_argument("--orientation", default="auto", choices=["auto", "h", "v", "horizontal", "vertical"])
    p.add_argument("--strategy", default="main", choices=["main", "appendix-a"])


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="parity-compile", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("compile", help="compile a layout to a circuit")
    _add_source(p)
    _add_params(p)
    p.add_argument("--emit", default="json", choices=["json", "qasm"])
    p.add_argument("--out", help="circuit output path")
    p.add_argument("--report", help="also write the JSON report here")
    p.set_defaults(func=run_compile)

    p = sub.add_parser("verify", help="check a circuit against a layout's target phases")
    _add_source(p)
    _add_params(p)
    p.add_argument("--circuit", help="circuit file; compiled from the layout if omitted")
    p.add_argument("--mode", default="auto", choices=["auto", "exhaustive", "sampled"])
    p.add_argument("--samples", type=int, default=4096)
    p.add_argument("--seed", type=int, default=0)
    p.set_defaults(func=run_verify)

    p = sub.add_parser("bench", help="random-layout benchmark to CSV (plus figures)")
    p.add_argument("--config", help="JSON file with sizes, r3_values, d, samples, seed, jobs")
    p.add_argument("--sizes", help="comma-separated n values")
    p.add_argument("--r3", help="comma-separated triangle ratios (default 0,0.5,1)")
    p.add_argument("--d", type=int)
    p.add_argument("--samples", type=int)
    p.add_argument("--seed", type=int)
    p.add_argument("--jobs", type=int)
    p.add_argument("--out", help="CSV path (stdout if omitted)")
    p.add_argument("--no-figures", action="store_true")
    p.set_defaults(func=run_bench)

    p = sub.add_parser("gen", help="write a generated layout")
    p.add_argument("--gen", required=True)
    p.add_argument("--format", default="auto", choices=["auto", "text", "json"])
    p.add_argument("--out")
    p.set_defaults(func=run_gen)
    return parser


def main(argv: list[str] | None = None) -> int:
    logging.basicConfig(
        level=getattr(logging, os.environ.get("PARITY_LOG", "WARNING").upper(), logging.WARNING),
        format="%(levelname)s %(name)s: %(message)s",
        stream=sys.stderr,
    )
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_INPUT if exc.code else EXIT_OK
    try:
        return args.func(args)
    except InputError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except Unsupported as exc:
        print(f"unsupported: {exc}", file=sys.stderr)
        return EXIT_UNSUPPORTED


if __name__ == "__main__":
    sys.exit(main())
