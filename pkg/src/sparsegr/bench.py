"""Random sparse vectors and gate-count sweeps written as CSV.

Every instance is generated from its own seed, derived from
``(master seed, n, d, trial)`` through :class:`numpy.random.SeedSequence`
and fed to the PCG64 generator, so a sweep point can be recomputed alone
and sweeps can be split across workers without changing any row.
"""
from __future__ import annotations

import csv
import io
import math
import statistics
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from typing import Iterable, Sequence

import numpy as np

from .core import GateCounts, SparseVector
from .grover_rudolph import gr_circuit
from .lowering import count_gates, lower
from .perm_gr import perm_gr_circuit
from .simulator import fidelity, simulate

KINDS = ("complex", "real", "uniform")
PIPELINES = ("gr", "gr-opt", "permgr")

AMPLITUDE_NOTE = (
    "complex: re, im i.i.d. N(0,1); real: i.i.d. N(0,1); uniform: all equal; "
    "locations uniform without replacement; normalized; RNG PCG64 seeded per instance "
    "by SeedSequence([seed, n, d, trial])"
)

CSV_HEADER = ["pipeline", "kind", "n", "d", "seed", "toffoli", "cnot", "single", "micros"]
VERIFY_TOL = 1e-9


def instance_seed(master: int, n: int, d: int, trial: int) -> int:
    return int(np.random.SeedSequence([master, n, d, trial]).generate_state(1, np.uint64)[0])


def gen_random_sparse(n: int, d: int, kind: str, seed: int) -> SparseVector:
    """Normalized random vector with ``d`` nonzero entries on ``n`` qubits."""
    if not 1 <= d <= 1 << n:
        raise ValueError(f"sparsity d={d} infeasible on {n} qubits")
    if kind not in KINDS:
        raise ValueError(f"unknown vector kind {kind!r}")
    rng = np.random.default_rng(seed)
    locs = np.sort(rng.choice(1 << n, size=d, replace=False))
    if kind == "complex":
        amps = rng.standard_normal(d) + 1j * rng.standard_normal(d)
    elif kind == "real":
        amps = rng.standard_normal(d).astype(complex)
    else:
        amps = np.ones(d, dtype=complex)
    return SparseVector(n, tuple(int(x) for x in locs), tuple(amps)).normalized()


def compile_pipeline(v: SparseVector, pipeline: str):
    if pipeline == "gr":
        return gr_circuit(v)
    if pipeline == "gr-opt":
        return gr_circuit(v, optimize=True)
    if pipeline == "permgr":
        return perm_gr_circuit(v)
    raise ValueError(f"unknown pipeline {pipeline!r}")


@dataclass(frozen=True, order=True)
class ExperimentRow:
    pipeline: str
    kind: str
    n: int
    d: int
    seed: int
    counts: GateCounts
    micros: int = 0

    def as_csv(self) -> list:
        c = self.counts
        return [self.pipeline, self.kind, self.n, self.d, self.seed,
                c.toffoli, c.cnot, c.single_qubit, self.micros]


def run_instance(pipeline: str, kind: str, n: int, d: int, seed: int,
                 verify: bool = False, timing: bool = False) -> ExperimentRow:
    v = gen_random_sparse(n, d, kind, seed)
    start = time.perf_counter()
    lowered = lower(compile_pipeline(v, pipeline))
    micros = round((time.perf_counter() - start) * 1e6) if timing else 0
    if verify:
        f = fidelity(simulate(lowered, "sparse"), v)
        if f < 1 - VERIFY_TOL:
            raise AssertionError(f"{pipeline} n={n} d={d} seed={seed}: fidelity {f!r}")
    return ExperimentRow(pipeline, kind, n, d, seed, count_gates(lowered), micros)


def _run_task(args) -> ExperimentRow:
    return run_instance(*args)


def _map(tasks: list, workers: int) -> list:
    if workers > 1 and len(tasks) > 1:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            return list(pool.map(_run_task, tasks, chunksize=max(1, len(tasks) // (4 * workers))))
    return [_run_task(t) for t in tasks]


def _check_points(ns: Iterable[int], ds: Iterable[int]) -> list[tuple[int, int]]:
    points = [(n, d) for n in ns for d in ds]
    bad = [(n, d) for n, d in points if not 1 <= d <= 1 << n]
    if bad:
        raise ValueError(f"infeasible (n, d) points: {bad}")
    return points


def run_scaling(pipeline: str, kind: str, ns: Sequence[int], ds: Sequence[int],
                trials: int, seed: int, verify: bool = False, timing: bool = False,
                workers: int = 1) -> list[ExperimentRow]:
    """One row per ``(n, d, trial)``, sorted."""
    if pipeline not in PIPELINES:
        raise ValueError(f"unknown pipeline {pipeline!r}")
    tasks = [
        (pipeline, kind, n, d, instance_seed(seed, n, d, t), verify, timing)
        for n, d in _check_points(ns, ds)
        for t in range(trials)
    ]
    return sorted(_map(tasks, workers))


def rows_to_csv(rows: Iterable[ExperimentRow]) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(CSV_HEADER)
    for r in rows:
        w.writerow(r.as_csv())
    return buf.getvalue()


def summarize(rows: Iterable[ExperimentRow]) -> list[dict]:
    """Mean and population standard deviation of each count per sweep point."""
    groups: dict[tuple, list[ExperimentRow]] = {}
    for r in rows:
        groups.setdefault((r.pipeline, r.kind, r.n, r.d), []).append(r)
    out = []
    for (pipeline, kind, n, d), rs in sorted(groups.items()):
        entry = {"pipeline": pipeline, "kind": kind, "n": n, "d": d, "trials": len(rs)}
        for name in ("toffoli", "cnot", "single_qubit"):
            vals = [getattr(r.counts, name) for r in rs]
            entry[f"{name}_mean"] = statistics.fmean(vals)
            entry[f"{name}_std"] = statistics.pstdev(vals)
        out.append(entry)
    return out


def dicts_to_csv(entries: list[dict], comment: str | None = None) -> str:
    buf = io.StringIO()
    if comment:
        buf.write(f"# {comment}\n")
    if entries:
        w = csv.DictWriter(buf, fieldnames=list(entries[0]), lineterminator="\n")
        w.writeheader()
        for e in entries:
            w.writerow({k: repr(v) if isinstance(v, float) else v for k, v in e.items()})
    return buf.getvalue()


def loglog_slope(xs: Sequence[float], ys: Sequence[float]) -> float:
    """Least-squares slope of ``log y`` against ``log x``."""
    return float(np.polyfit(np.log(xs), np.log(ys), 1)[0])


def density_to_d(n: int, density: float) -> int:
    return min(max(1, round(density * (1 << n))), 1 << n)


def run_ratio(ns: Sequence[int], trials: int, seed: int, densities: Sequence[float] = (),
              ds: Sequence[int] = (), kinds: Sequence[str] = ("complex",),
              workers: int = 1) -> list[dict]:
    """Toffoli ratios ``permgr / gr-opt`` and ``gr-opt / gr`` on shared instances.

    Sweep points are every ``n`` crossed with either the given densities
    (``d = round(density * 2**n)``) or the given sparsities.
    """
    points = sorted({(n, density_to_d(n, rho)) for n in ns for rho in densities}
                    | set(_check_points(ns, ds)))
    tasks = [
        (p, kind, n, d, instance_seed(seed, n, d, t), False, False)
        for kind in kinds
        for n, d in points
        for t in range(trials)
        for p in PIPELINES
    ]
    rows = _map(tasks, workers)
    totals: dict[tuple, dict[str, list[int]]] = {}
    for r in rows:
        totals.setdefault((r.kind, r.n, r.d), {}).setdefault(r.pipeline, []).append(r.counts.toffoli)
    out = []
    for (kind, n, d), by in sorted(totals.items()):
        gr = statistics.fmean(by["gr"])
        opt = statistics.fmean(by["gr-opt"])
        perm = statistics.fmean(by["permgr"])
        out.append({
            "kind": kind, "n": n, "d": d, "density": d / (1 << n), "trials": len(by["gr"]),
            "gr_toffoli": gr, "gropt_toffoli": opt, "permgr_toffoli": perm,
            "permgr_over_gropt": perm / opt if opt else math.nan,
            "gropt_over_gr": opt / gr if gr else math.nan,
        })
    return out


def write_svg(path: str, series: dict[str, tuple[list[float], list[float]]],
              xlabel: str, ylabel: str, log_x: bool = False, log_y: bool = False) -> None:
    import matplotlib

    matplotlib.use("Agg")
    import matplotlib.pyplot as plt

    fig, ax = plt.subplots(figsize=(5, 3.5))
    for label, (xs, ys) in series.items():
        ax.plot(xs, ys, marker="o", label=label)
    ax.set_xlabel(xlabel)
    ax.set_ylabel(ylabel)
    if log_x:
        ax.set_xscale("log")
    if log_y:
        ax.set_yscale("log")
    ax.legend(fontsize="small")
    fig.tight_layout()
    fig.savefig(path, format="svg", metadata={"Date": None})
    plt.close(fig)
