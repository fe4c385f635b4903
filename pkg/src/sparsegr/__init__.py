"""Sparse quantum state preparation with Grover-Rudolph and Permutation Grover-Rudolph."""
from .core import (
    AngleTable,
    Circuit,
    CircuitError,
    ControlPattern,
    CostWeights,
    Gate,
    GateCounts,
    ParseError,
    SparseVector,
    circuit_to_text,
    normalize,
    parse_circuit,
    parse_sparse_vector,
    serialize_sparse_vector,
)
from .grover_rudolph import (
    build_circuit,
    coarse_grain,
    coarse_levels,
    find_angles,
    find_sparse_angles,
    gr_circuit,
)
from .lowering import analytic_cost_mcrot, count_gates, lower, lower_mcrot, lower_mcx
from .optimizer import optimize_angles, optimize_table
from .perm_gr import perm_gr_circuit
from .permutation import CyclePermutation, cycle_circuit, cycle_cost, sparse_perm
from .simulator import AncillaNotRestored, fidelity, simulate

__version__ = "0.1.0"


def compile_vector(v: SparseVector, pipeline: str = "gr", optimize: bool = False) -> Circuit:
    """High-level circuit for ``v`` with pipeline ``'gr'`` or ``'permgr'``."""
    if pipeline == "gr":
        return gr_circuit(v, optimize=optimize)
    if pipeline == "permgr":
        return perm_gr_circuit(v, optimize=optimize)
    raise ValueError(f"unknown pipeline {pipeline!r}")


__all__ = [
    "AncillaNotRestored",
    "AngleTable",
    "Circuit",
    "CircuitError",
    "ControlPattern",
    "CostWeights",
    "CyclePermutation",
    "Gate",
    "GateCounts",
    "ParseError",
    "SparseVector",
    "build_circuit",
    "circuit_to_text",
    "coarse_grain",
    "coarse_levels",
    "compile_vector",
    "count_gates",
    "cycle_circuit",
    "cycle_cost",
    "fidelity",
    "find_angles",
    "find_sparse_angles",
    "gr_circuit",
    "lower",
    "lower_mcrot",
    "lower_mcx",
    "normalize",
    "optimize_angles",
    "optimize_table",
    "analytic_cost_mcrot",
    "parse_circuit",
    "parse_sparse_vector",
    "perm_gr_circuit",
    "serialize_sparse_vector",
    "simulate",
    "sparse_perm",
]
