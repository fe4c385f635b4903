"""Statevector simulation of circuits started from ``|0...0>``.

Two interchangeable backends apply the same gate semantics:

``dense``
    the full ``2**width`` amplitude array, viewed as a rank-``width`` tensor
    with qubit ``q`` on axis ``q``.  Capped at :data:`MAX_DENSE_QUBITS`.
``sparse``
    only the nonzero amplitudes, as parallel arrays of basis indices and
    values.  Circuits from the state-preparation passes keep at most a few
    times ``d`` amplitudes alive, so this is the backend used for sweeps.
"""
from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .core import CCX, CNOT, MCROT, MCX, P, RY, X, Circuit, CircuitError, Gate, SparseVector

MAX_DENSE_QUBITS = 24
PRUNE_TOL = 1e-14
ANCILLA_TOL = 1e-10

_X = np.array([[0, 1], [1, 0]], dtype=complex)


class AncillaNotRestored(RuntimeError):
    """Ancilla register left outside ``|0>``; indicates a lowering bug."""


def ry_matrix(theta: float) -> np.ndarray:
    c, s = math.cos(theta / 2), math.sin(theta / 2)
    return np.array([[c, -s], [s, c]], dtype=complex)


def phase_matrix(phi: float) -> np.ndarray:
    return np.array([[1, 0], [0, complex(math.cos(phi), math.sin(phi))]])


def gate_action(g: Gate) -> tuple[list[tuple[int, int]], int, np.ndarray]:
    """``(controls, target, 2x2 matrix)`` for any supported gate."""
    if g.name == X:
        return [], g.qubits[0], _X
    if g.name == CNOT:
        return [(g.qubits[0], 1)], g.qubits[1], _X
    if g.name == CCX:
        return [(g.qubits[0], 1), (g.qubits[1], 1)], g.qubits[2], _X
    if g.name == RY:
        return [], g.qubits[0], ry_matrix(g.theta)
    if g.name == P:
        return [], g.qubits[0], phase_matrix(g.phi)
    if g.name == MCROT:
        return g.control.controls, g.qubits[0], phase_matrix(g.phi) @ ry_matrix(g.theta)
    if g.name == MCX:
        return g.control.controls, g.qubits[0], _X
    raise CircuitError(f"unsupported gate {g.name}")


class _State:
    n_main: int
    n_ancilla: int

    @property
    def width(self) -> int:
        return self.n_main + self.n_ancilla

    def main_amplitudes(self, locations) -> np.ndarray:
        """Amplitudes of ``|loc>|0...0>_anc`` for each main-register location."""
        raise NotImplementedError

    def ancilla_weight(self) -> float:
        """Probability of finding the ancilla register outside ``|0>``."""
        raise NotImplementedError

    def norm(self) -> float:
        raise NotImplementedError


@dataclass
class StateVector(_State):
    """Dense amplitudes over main (most significant) then ancilla qubits."""

    n_main: int
    n_ancilla: int
    amplitudes: np.ndarray

    def main_amplitudes(self, locations) -> np.ndarray:
        idx = np.asarray(locations, dtype=np.int64) << self.n_ancilla
        return self.amplitudes[idx]

    def ancilla_weight(self) -> float:
        grid = self.amplitudes.reshape(1 << self.n_main, 1 << self.n_ancilla)
        return float(np.sum(np.abs(grid[:, 1:]) ** 2))

    def norm(self) -> float:
        return float(np.linalg.norm(self.amplitudes))

    def main_register(self) -> np.ndarray:
        """Main-register slice with the ancillas in ``|0>``."""
        return self.amplitudes.reshape(1 << self.n_main, 1 << self.n_ancilla)[:, 0].copy()

    def dump(self, tol: float = 1e-12) -> str:
        return "".join(
            f"{i} {float(a.real)!r} {float(a.imag)!r}\n"
            for i, a in enumerate(self.amplitudes)
            if abs(a) > tol
        )


@dataclass
class SparseState(_State):
    """Nonzero amplitudes only; ``indices`` are full-register basis indices."""

    n_main: int
    n_ancilla: int
    indices: np.ndarray
    amplitudes: np.ndarray

    def main_amplitudes(self, locations) -> np.ndarray:
        want = np.asarray(locations, dtype=np.int64) << self.n_ancilla
        lookup = dict(zip(self.indices.tolist(), self.amplitudes.tolist()))
        return np.array([lookup.get(int(i), 0j) for i in want], dtype=complex)

    def ancilla_weight(self) -> float:
        mask = (1 << self.n_ancilla) - 1
        off = (self.indices & mask) != 0
        return float(np.sum(np.abs(self.amplitudes[off]) ** 2))

    def norm(self) -> float:
        return float(np.linalg.norm(self.amplitudes))

    def to_dense(self) -> StateVector:
        if self.width > MAX_DENSE_QUBITS:
            raise CircuitError(f"{self.width} qubits exceed the dense cap")
        amps = np.zeros(1 << self.width, dtype=complex)
        np.add.at(amps, self.indices, self.amplitudes)
        return StateVector(self.n_main, self.n_ancilla, amps)

    def dump(self, tol: float = 1e-12) -> str:
        order = np.argsort(self.indices)
        return "".join(
            f"{int(self.indices[i])} {float(self.amplitudes[i].real)!r} {float(self.amplitudes[i].imag)!r}\n"
            for i in order
            if abs(self.amplitudes[i]) > tol
        )


# ---------------------------------------------------------------------------
# dense kernel


def _apply_dense(psi: np.ndarray, controls, target: int, u: np.ndarray) -> None:
    sl: list = [slice(None)] * psi.ndim
    for q, b in controls:
        sl[q] = b
    s0, s1 = list(sl), list(sl)
    s0[target], s1[target] = 0, 1
    s0, s1 = tuple(s0), tuple(s1)
    a0 = psi[s0].copy()
    a1 = psi[s1]
    if u[0, 1] == 0 and u[1, 0] == 0:
        if u[0, 0] != 1:
            psi[s0] = u[0, 0] * a0
        psi[s1] = u[1, 1] * a1
        return
    psi[s0] = u[0, 0] * a0 + u[0, 1] * a1
    psi[s1] = u[1, 0] * a0 + u[1, 1] * a1


def _simulate_dense(circuit: Circuit) -> StateVector:
    width = circuit.width
    if width > MAX_DENSE_QUBITS:
        raise CircuitError(f"{width} qubits exceed the dense simulator cap of {MAX_DENSE_QUBITS}")
    psi = np.zeros((2,) * width, dtype=complex) if width else np.zeros((), dtype=complex)
    psi[(0,) * width] = 1.0
    for g in circuit.gates:
        controls, target, u = gate_action(g)
        _apply_dense(psi, controls, target, u)
    return StateVector(circuit.n_main, circuit.n_ancilla, psi.reshape(-1))


# ---------------------------------------------------------------------------
# sparse kernel


def _apply_sparse(idx, amp, width, controls, target, u):
    cmask = cval = 0
    for q, b in controls:
        bit = 1 << (width - 1 - q)
        cmask |= bit
        cval |= bit * b
    tbit = 1 << (width - 1 - target)
    sel = (idx & cmask) == cval if cmask else np.ones(idx.shape, dtype=bool)
    if u is _X:
        idx = idx.copy()
        idx[sel] ^= tbit
        return idx, amp
    one = (idx & tbit) != 0
    if u[0, 1] == 0 and u[1, 0] == 0:
        amp = amp.copy()
        amp[sel & ~one] *= u[0, 0]
        amp[sel & one] *= u[1, 1]
        return idx, amp
    keep = ~sel
    sidx, samp, sone = idx[sel], amp[sel], one[sel]
    base, inv = np.unique(sidx & ~tbit, return_inverse=True)
    a0 = np.zeros(base.shape, dtype=complex)
    a1 = np.zeros(base.shape, dtype=complex)
    a0[inv[~sone]] = samp[~sone]
    a1[inv[sone]] = samp[sone]
    n0 = u[0, 0] * a0 + u[0, 1] * a1
    n1 = u[1, 0] * a0 + u[1, 1] * a1
    idx = np.concatenate([idx[keep], base, base | tbit])
    amp = np.concatenate([amp[keep], n0, n1])
    live = np.abs(amp) > PRUNE_TOL
    return idx[live], amp[live]


def _simulate_sparse(circuit: Circuit) -> SparseState:
    width = circuit.width
    if width > 62:
        raise CircuitError("sparse simulator indexes at most 62 qubits")
    idx = np.zeros(1, dtype=np.int64)
    amp = np.ones(1, dtype=complex)
    for g in circuit.gates:
        controls, target, u = gate_action(g)
        idx, amp = _apply_sparse(idx, amp, width, controls, target, u)
    return SparseState(circuit.n_main, circuit.n_ancilla, idx, amp)


def simulate(circuit: Circuit, backend: str = "dense"):
    """Apply ``circuit`` to ``|0...0>`` on main plus ancilla qubits."""
    if backend == "dense":
        return _simulate_dense(circuit)
    if backend == "sparse":
        return _simulate_sparse(circuit)
    raise ValueError(f"unknown backend {backend!r}")


def fidelity(state: _State, v: SparseVector) -> float:
    """Global-phase-invariant overlap ``|<v|state>|`` with ``v`` normalized.

    Raises :class:`AncillaNotRestored` if the ancillas carry more than
    :data:`ANCILLA_TOL` probability.
    """
    if state.n_main != v.n:
        raise ValueError(f"state has {state.n_main} main qubits, vector has {v.n}")
    leaked = state.ancilla_weight()
    if leaked > ANCILLA_TOL:
        raise AncillaNotRestored(f"ancilla weight {leaked:.3e} after circuit")
    target = np.array(v.normalized().amplitudes)
    got = state.main_amplitudes(v.locations)
    f = float(abs(np.vdot(target, got)))
    outside = state.norm() ** 2 - float(np.sum(np.abs(got) ** 2)) - leaked
    if outside > 1 - f * f + 1e-10:
        raise AssertionError(f"mass {outside:.3e} outside the support exceeds 1 - F^2")
    return min(f, 1.0)


def unitary(circuit: Circuit, columns=None) -> np.ndarray:
    """Matrix of a small circuit, column ``j`` = image of basis state ``j``.

    ``columns`` restricts the inputs (all ``2**width`` by default); the
    inputs are propagated together as a batch.
    """
    width = circuit.width
    if width > 16:
        raise CircuitError("unitary() is limited to 16 qubits")
    dim = 1 << width
    cols = np.arange(dim) if columns is None else np.asarray(columns, dtype=np.int64)
    psi = np.zeros((dim, len(cols)), dtype=complex)
    psi[cols, np.arange(len(cols))] = 1.0
    psi = psi.reshape((2,) * width + (len(cols),))
    for g in circuit.gates:
        controls, target, u = gate_action(g)
        _apply_dense(psi, controls, target, u)
    return psi.reshape(dim, len(cols))
