"""Command-line entry point: ``sparsegr compile|verify|count|angles|bench``."""
from __future__ import annotations

import argparse
import sys
from pathlib import Path

from . import bench
from .core import CircuitError, ParseError, circuit_to_text, parse_circuit, parse_sparse_vector
from .grover_rudolph import find_sparse_angles, gr_circuit
from .lowering import count_gates, lower
from .optimizer import optimize_table
from .perm_gr import perm_gr_circuit
from .simulator import AncillaNotRestored, fidelity, simulate


def _read_vector(path: str):
    return parse_sparse_vector(Path(path).read_text(encoding="utf-8"))


def _compile(args):
    v = _read_vector(args.input)
    if args.pipeline == "gr":
        circ = gr_circuit(v, optimize=args.optimize)
    else:
        circ = perm_gr_circuit(v, optimize=args.optimize)
    return v, circ


def cmd_compile(args) -> int:
    _, circ = _compile(args)
    if not args.high_level:
        circ = lower(circ)
    text = circuit_to_text(circ)
    if args.output:
        Path(args.output).write_text(text, encoding="utf-8")
    else:
        sys.stdout.write(text)
    return 0


def cmd_verify(args) -> int:
    v, circ = _compile(args)
    lowered = lower(circ)
    f = fidelity(simulate(lowered, args.backend), v)
    counts = count_gates(lowered)
    print(f"fidelity {f!r}")
    print(f"toffoli {counts.toffoli} cnot {counts.cnot} single {counts.single_qubit}")
    if f < 1 - args.tol:
        print(f"error: fidelity below 1 - {args.tol}", file=sys.stderr)
        return 1
    return 0


def cmd_count(args) -> int:
    circ = parse_circuit(Path(args.input).read_text(encoding="utf-8"))
    if not circ.is_lowered:
        circ = lower(circ)
    c = count_gates(circ)
    print(f"toffoli {c.toffoli}\ncnot {c.cnot}\nsingle {c.single_qubit}")
    return 0


def cmd_angles(args) -> int:
    table = find_sparse_angles(_read_vector(args.input).normalized())
    if args.optimize:
        table = optimize_table(table)
    sys.stdout.write(table.dump())
    return 0


def _emit(text: str, path: str | None) -> None:
    if path:
        Path(path).write_text(text, encoding="utf-8")
    else:
        sys.stdout.write(text)


def cmd_bench_scaling(args) -> int:
    rows = bench.run_scaling(
        args.pipeline, args.kind, args.n, args.d, args.trials, args.seed,
        verify=args.verify, timing=args.timing, workers=args.workers,
    )
    _emit(bench.rows_to_csv(rows), args.csv)
    summary = bench.summarize(rows)
    if args.summary:
        Path(args.summary).write_text(
            bench.dicts_to_csv(summary, comment=bench.AMPLITUDE_NOTE), encoding="utf-8"
        )
    if args.svg:
        series = {}
        if len(args.d) >= len(args.n):
            for n in args.n:
                pts = [e for e in summary if e["n"] == n]
                series[f"n={n}"] = ([e["d"] for e in pts], [e["toffoli_mean"] for e in pts])
            bench.write_svg(args.svg, series, "d", "Toffoli count", log_x=True, log_y=True)
        else:
            for d in args.d:
                pts = [e for e in summary if e["d"] == d]
                series[f"d={d}"] = ([e["n"] for e in pts], [e["toffoli_mean"] for e in pts])
            bench.write_svg(args.svg, series, "n", "Toffoli count")
    return 0


def cmd_bench_ratio(args) -> int:
    if not args.density and not args.d:
        raise ValueError("bench ratio needs --density or --d")
    entries = bench.run_ratio(
        args.n, args.trials, args.seed, densities=args.density or (), ds=args.d or (),
        kinds=args.kind, workers=args.workers,
    )
    _emit(bench.dicts_to_csv(entries), args.csv)
    if args.svg:
        series = {}
        for kind in args.kind:
            for n in args.n:
                pts = [e for e in entries if e["kind"] == kind and e["n"] == n]
                xs = [e["density"] for e in pts]
                series[f"{kind} n={n} permgr/gr-opt"] = (xs, [e["permgr_over_gropt"] for e in pts])
                series[f"{kind} n={n} gr-opt/gr"] = (xs, [e["gropt_over_gr"] for e in pts])
        bench.write_svg(args.svg, series, "density d/N", "Toffoli ratio", log_x=True)
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="sparsegr", description=__doc__)
    sub = parser.add_subparsers(dest="command", required=True)

    def pipeline_args(p):
        p.add_argument("--pipeline", choices=("gr", "permgr"), default="gr")
        p.add_argument("--optimize", action="store_true", help="merge equal-angle rotations")
        p.add_argument("--input", required=True, help="sparse-vector file")

    p = sub.add_parser("compile", help="compile a sparse vector to a circuit file")
    pipeline_args(p)
    p.add_argument("--output", help="circuit file (stdout if omitted)")
    p.add_argument("--high-level", action="store_true", help="keep MCROT/MCX gates unlowered")
    p.set_defaults(func=cmd_compile)

    p = sub.add_parser("verify", help="compile, simulate and print the fidelity")
    pipeline_args(p)
    p.add_argument("--backend", choices=("dense", "sparse"), default="sparse")
    p.add_argument("--tol", type=float, default=1e-9)
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("count", help="gate counts of a circuit file")
    p.add_argument("--input", required=True)
    p.set_defaults(func=cmd_count)

    p = sub.add_parser("angles", help="dump the angle table of a sparse vector")
    p.add_argument("--input", required=True)
    p.add_argument("--optimize", action="store_true")
    p.set_defaults(func=cmd_angles)

    p = sub.add_parser("bench", help="gate-count sweeps")
    bsub = p.add_subparsers(dest="study", required=True)

    def common(q):
        q.add_argument("--n", type=int, nargs="+", required=True)
        q.add_argument("--trials", type=int, default=20)
        q.add_argument("--seed", type=int, default=0)
        q.add_argument("--csv", help="output CSV (stdout if omitted)")
        q.add_argument("--svg", help="optional plot")
        q.add_argument("--workers", type=int, default=1)

    q = bsub.add_parser("scaling", help="gate counts against d and n")
    common(q)
    q.add_argument("--d", type=int, nargs="+", required=True)
    q.add_argument("--pipeline", choices=bench.PIPELINES, default="gr")
    q.add_argument("--kind", choices=bench.KINDS, default="complex")
    q.add_argument("--verify", action="store_true", help="simulate every instance first")
    q.add_argument("--timing", action="store_true", help="fill the micros column")
    q.add_argument("--summary", help="mean/stddev CSV per sweep point")
    q.set_defaults(func=cmd_bench_scaling)

    q = bsub.add_parser("ratio", help="permgr/gr-opt and gr-opt/gr Toffoli ratios")
    common(q)
    q.add_argument("--d", type=int, nargs="+")
    q.add_argument("--density", type=float, nargs="+")
    q.add_argument("--kind", choices=bench.KINDS, nargs="+", default=["complex"])
    q.set_defaults(func=cmd_bench_ratio)
    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except (ParseError, CircuitError, AncillaNotRestored, ValueError, OSError, AssertionError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
