"""Coarse-graining, rotation angles and the layered Grover-Rudolph circuit."""
from __future__ import annotations

import cmath
import math

import numpy as np

from .core import AngleTable, Circuit, CircuitError, SparseVector, bits, mcrot


def _arg(z: complex) -> float:
    # arg(0) := 0; also sidesteps phase(-0.0) == pi
    return cmath.phase(z) if z != 0 else 0.0


def split_pair(a0: complex, a1: complex) -> tuple[float, float, complex]:
    """Angles for one parent and its coarse-grained amplitude.

    Returns ``(theta, phi, parent)`` such that ``parent`` followed by
    ``P(phi) Ry(theta)`` on a fresh qubit reproduces ``(a0, a1)``.
    """
    r0, r1 = abs(a0), abs(a1)
    norm = math.hypot(r0, r1)
    if norm == 0:
        return 0.0, 0.0, 0j
    theta = 2.0 * math.acos(min(1.0, r0 / norm))
    phi = _arg(a1) - _arg(a0)
    return theta, phi, cmath.rect(norm, _arg(a0))


def coarse_grain(v: SparseVector) -> SparseVector:
    """One coarse-graining step, ``n`` qubits to ``n - 1``."""
    if v.n < 1:
        raise ValueError("cannot coarse-grain a zero-qubit vector")
    parents = _sweep_level(v.locations, v.amplitudes)
    return SparseVector(v.n - 1, tuple(p for p, *_ in parents), tuple(c for *_, c in parents))


def coarse_levels(v: SparseVector) -> list[SparseVector]:
    """``[psi^(0), ..., psi^(n)]`` with ``psi^(n) = v``."""
    out = [v]
    while out[-1].n > 0:
        out.append(coarse_grain(out[-1]))
    return out[::-1]


def _sweep_level(locs, amps):
    """Pair adjacent siblings; yields ``(parent, theta, phi, coarse)`` rows."""
    rows = []
    l, size = 0, len(locs)
    while l < size:
        loc = locs[l]
        if loc % 2 == 0 and l + 1 < size and locs[l + 1] == loc + 1:
            a0, a1 = amps[l], amps[l + 1]
            l += 2
        elif loc % 2 == 0:
            a0, a1 = amps[l], 0j
            l += 1
        else:
            a0, a1 = 0j, amps[l]
            l += 1
        theta, phi, parent = split_pair(a0, a1)
        rows.append((loc >> 1, theta, phi, parent))
    return rows


def find_sparse_angles(v: SparseVector) -> AngleTable:
    """Angle table from the nonzero entries only, in O(d n) work.

    ``v`` must be normalized.  Entries with ``theta == phi == 0`` are not
    stored.
    """
    levels: list[dict[str, tuple[float, float]]] = [{} for _ in range(v.n)]
    locs, amps = v.locations, v.amplitudes
    for k in range(v.n - 1, -1, -1):
        rows = _sweep_level(locs, amps)
        level = levels[k]
        for parent, theta, phi, _ in rows:
            if theta != 0.0 or phi != 0.0:
                level[bits(parent, k)] = (theta, phi)
        locs = [r[0] for r in rows]
        amps = [r[3] for r in rows]
    return AngleTable(tuple(levels))


def find_angles(v: SparseVector) -> AngleTable:
    """Angle table by sweeping the full dense vector, O(2^n) work.

    Kept as the reference for :func:`find_sparse_angles`.
    """
    psi = v.to_dense()
    levels: list[dict[str, tuple[float, float]]] = [{} for _ in range(v.n)]
    for k in range(v.n - 1, -1, -1):
        a0, a1 = psi[0::2], psi[1::2]
        r0, r1 = np.abs(a0), np.abs(a1)
        norm = np.hypot(r0, r1)
        ratio = np.divide(r0, norm, out=np.ones_like(norm), where=norm > 0)
        theta = 2.0 * np.arccos(np.minimum(ratio, 1.0))
        arg0 = np.where(a0 != 0, np.angle(a0), 0.0)
        arg1 = np.where(a1 != 0, np.angle(a1), 0.0)
        phi = arg1 - arg0
        for p in np.flatnonzero((theta != 0) | (phi != 0)):
            levels[k][bits(int(p), k)] = (float(theta[p]), float(phi[p]))
        psi = norm * np.exp(1j * arg0)
    return AngleTable(tuple(levels))


def densify(v: SparseVector) -> SparseVector:
    """Round trip through the dense representation (drops nothing)."""
    return SparseVector.from_dense(v.to_dense())


def build_circuit(table: AngleTable, n: int, offset: int = 0) -> Circuit:
    """One multi-controlled rotation per table entry, level by level.

    ``offset`` shifts the whole construction down the register: level ``k``
    then targets qubit ``offset + k`` and the leading ``offset`` qubits are
    left uncontrolled.  The returned circuit spans ``n + offset`` qubits.
    """
    if table.n > n:
        raise CircuitError(f"angle table has {table.n} levels for {n} qubits")
    pad = "e" * offset
    gates = []
    for k, level in enumerate(table.levels):
        for pat in sorted(level):
            theta, phi = level[pat]
            gates.append(mcrot(pad + pat, theta, phi, offset + k))
    return Circuit(n + offset, 0, tuple(gates))


def gr_circuit(v: SparseVector, optimize: bool = False) -> Circuit:
    """High-level Grover-Rudolph circuit preparing ``v`` (normalized internally)."""
    table = find_sparse_angles(v.normalized())
    if optimize:
        from .optimizer import optimize_table

        table = optimize_table(table)
    return build_circuit(table, v.n)
