"""Permutation Grover-Rudolph: dense preparation on ``ceil(log2 d)`` qubits, then a permutation."""
from __future__ import annotations

from .core import Circuit, SparseVector
from .grover_rudolph import build_circuit, find_sparse_angles
from .permutation import permutation_circuit, sparse_perm


def dense_register_width(d: int) -> int:
    return (d - 1).bit_length()


def perm_gr_circuit(v: SparseVector, optimize: bool = False) -> Circuit:
    """High-level circuit preparing ``v`` (normalized internally).

    The nonzero amplitudes are first loaded in order onto basis states
    ``0..d-1``.  Under the big-endian convention those live on the last
    ``m`` qubits, so the dense stage is built on qubits ``n-m .. n-1`` with
    the leading qubits already in ``|0>``.  The cycles of
    :func:`sparse_perm` then move ``|i>`` to ``|lambda_i>``.

    For ``d == 1`` the dense stage is empty; the amplitude's phase is global
    and dropped.
    """
    v = v.normalized()
    n, d = v.n, v.d
    m = dense_register_width(d)
    gates: tuple = ()
    if m:
        dense = SparseVector(m, tuple(range(d)), v.amplitudes)
        table = find_sparse_angles(dense)
        if optimize:
            from .optimizer import optimize_table

            table = optimize_table(table)
        gates = build_circuit(table, m, offset=n - m).gates
    perm = permutation_circuit(sparse_perm(v.locations, n), n)
    return Circuit(n, perm.n_ancilla, gates + perm.gates)
