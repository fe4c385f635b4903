"""Permutations sending ``i -> lambda_i`` and their ancilla-flag circuits."""
from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

from .core import Circuit, CostWeights, Gate, GateCounts, bits, cnot, hamming, mcx


@dataclass(frozen=True)
class CyclePermutation:
    """Disjoint cycles ``(x0, x1, ..., x_{M-1})`` meaning ``x_k -> x_{k+1}``."""

    cycles: tuple[tuple[int, ...], ...]

    def __post_init__(self):
        cycles = tuple(tuple(int(x) for x in c) for c in self.cycles)
        object.__setattr__(self, "cycles", cycles)
        seen: set[int] = set()
        for c in cycles:
            if len(c) < 2:
                raise ValueError(f"cycle {c} shorter than 2")
            if seen.intersection(c) or len(set(c)) != len(c):
                raise ValueError("cycles are not disjoint")
            seen.update(c)

    def __len__(self) -> int:
        return len(self.cycles)

    @property
    def total_length(self) -> int:
        return sum(len(c) for c in self.cycles)

    def mapping(self) -> dict[int, int]:
        out = {}
        for c in self.cycles:
            for a, b in zip(c, c[1:] + c[:1]):
                out[a] = b
        return out

    def apply(self, x: int) -> int:
        return self.mapping().get(x, x)

    def dump(self) -> str:
        return "".join("(" + " ".join(map(str, c)) + ")\n" for c in self.cycles)


def sparse_perm(locations: Sequence[int], n: int | None = None) -> CyclePermutation:
    """Cycles of a permutation mapping ``i`` to ``locations[i]`` for ``i < d``.

    ``locations`` must be strictly increasing.  A cycle is opened at every
    unvisited non-fixed ``i`` and followed through ``lambda`` until it lands
    on a free slot ``>= d``, which closes it back to ``i``.
    """
    lam = list(locations)
    d = len(lam)
    if n is not None and lam and lam[-1] >= 1 << n:
        raise ValueError(f"location {lam[-1]} does not fit in {n} qubits")
    free = [True] * d
    cycles = []
    for i in range(d):
        if not free[i] or lam[i] == i:
            continue
        j = lam[i]
        cycle = [i, j]
        while j < d:
            free[j] = False
            j = lam[j]
            cycle.append(j)
        cycles.append(tuple(cycle))
    return CyclePermutation(tuple(cycles))


def cycle_gates(cycle: Sequence[int], n: int, ancilla: int) -> list[Gate]:
    """Ancilla-flag implementation of one cycle on qubits ``0..n-1``.

    For each ``x_k`` the flag is raised when the register reads ``x_k``;
    while raised, CNOTs from the flag turn ``x_k`` into ``x_{k+1}``.  A last
    flip on ``x_0`` lowers the flag for the element that wrapped around.
    """
    xs = list(cycle)
    gates: list[Gate] = []
    for k, x in enumerate(xs):
        nxt = xs[(k + 1) % len(xs)]
        gates.append(mcx(bits(x, n), ancilla))
        delta = x ^ nxt
        gates += [cnot(ancilla, q) for q in range(n) if delta >> (n - 1 - q) & 1]
    gates.append(mcx(bits(xs[0], n), ancilla))
    return gates


def cycle_circuit(cycle: Sequence[int], n: int) -> Circuit:
    """Circuit on ``n`` main qubits plus one flag ancilla (qubit ``n``)."""
    if len(set(cycle)) != len(cycle) or any(not 0 <= x < 1 << n for x in cycle):
        raise ValueError("cycle entries must be distinct indices below 2^n")
    return Circuit(n, 1, tuple(cycle_gates(cycle, n, n)))


def permutation_circuit(perm: CyclePermutation, n: int) -> Circuit:
    """All cycles in sequence, sharing one flag ancilla."""
    gates: list[Gate] = []
    for c in perm.cycles:
        gates += cycle_gates(c, n, n)
    return Circuit(n, 1 if gates else 0, tuple(gates))


def cycle_cost(cycle: Sequence[int], n: int, weights: CostWeights | GateCounts | None = None) -> float:
    """Closed-form cost of one cycle circuit under per-gate ``weights``.

    Each of the ``M + 1`` flag flips is priced as an ``n``-controlled gate
    (ladder, two CNOTs, four one-qubit gates) plus an X pair per zero bit of
    its control value; each bit of ``x_k XOR x_{k+1}`` is priced at two
    CNOTs and four one-qubit gates.
    """
    if weights is None:
        weights = CostWeights()
    ct, ccx, c1 = weights.toffoli, weights.cnot, weights.single_qubit
    xs = list(cycle)
    m = len(xs)
    ring = xs + xs[:1]
    flips = 2 * (m + 1) * ((n - 1) * ct + 2 * c1 + ccx)
    zero_controls = 2 * sum(n - hamming(x) for x in ring) * c1
    moves = sum(hamming(ring[k] ^ ring[k + 1]) for k in range(m))
    return flips + zero_controls + 4 * moves * c1 + 2 * moves * ccx
