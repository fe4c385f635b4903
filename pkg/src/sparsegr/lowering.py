"""Lower multi-controlled gates to X / CNOT / Toffoli / Ry / P and count them.

A gate with ``k >= 2`` effective controls is built from

* an X pair around every control that must read ``0``,
* a left-deep Toffoli ladder ANDing the controls into ``k - 1`` ancillas
  (computed, used, then uncomputed in reverse),
* a singly-controlled core driven by the last ancilla.

The controlled ``P(phi) Ry(theta)`` core is::

    t: Ry(theta/2) -X- Ry(-theta/2) P(-phi/2) -X- P(phi/2)
    c: ------------ * --------------------- * -- P(phi/2)

which uses two CNOTs and at most five one-qubit gates.  The phase on the
control restores the determinant ``e^{i phi}`` that CNOT conjugation alone
cannot produce.
"""
from __future__ import annotations

from .core import (
    CCX,
    CNOT,
    MCROT,
    MCX,
    Circuit,
    CircuitError,
    Gate,
    GateCounts,
    cnot,
    phase,
    ry,
    toffoli,
    x_gate,
)


def _controlled_core(c: int, t: int, theta: float, phi: float) -> list[Gate]:
    if theta == 0 and phi == 0:
        return []
    out: list[Gate] = []
    if theta:
        out.append(ry(theta / 2, t))
    out.append(cnot(c, t))
    if theta:
        out.append(ry(-theta / 2, t))
    if phi:
        out.append(phase(-phi / 2, t))
    out.append(cnot(c, t))
    if phi:
        out += [phase(phi / 2, t), phase(phi / 2, c)]
    return out


def _uncontrolled(t: int, theta: float, phi: float) -> list[Gate]:
    out = []
    if theta:
        out.append(ry(theta, t))
    if phi:
        out.append(phase(phi, t))
    return out


def ancilla_demand(g: Gate) -> int:
    """Number of ladder ancillas the lowered form of ``g`` borrows."""
    if g.name not in (MCROT, MCX):
        return 0
    return max(g.control.k_eff - 1, 0)


def _lower_controlled(g: Gate, ancilla_base: int, width: int | None, core) -> list[Gate]:
    controls = g.control.controls
    target = g.qubits[0]
    k = len(controls)
    if k >= 2 and width is not None and ancilla_base + k - 1 > width:
        raise CircuitError(
            f"{g.name} with {k} controls needs ancillas up to {ancilla_base + k - 2}, "
            f"circuit width is {width}"
        )
    flips = [x_gate(q) for q, b in controls if b == 0]
    if k == 0:
        return core(None, target)
    if k == 1:
        body = core(controls[0][0], target)
    else:
        body = core(ancilla_base + k - 2, target)
        if body:
            ladder = [toffoli(controls[0][0], controls[1][0], ancilla_base)]
            for i in range(2, k):
                ladder.append(toffoli(ancilla_base + i - 2, controls[i][0], ancilla_base + i - 1))
            body = ladder + body + ladder[::-1]
    if not body:
        return []
    return flips + body + flips


def lower_mcrot(g: Gate, ancilla_base: int, width: int | None = None) -> list[Gate]:
    """Primitive sequence implementing a multi-controlled ``P(phi) Ry(theta)``.

    Ancillas ``ancilla_base .. ancilla_base + k_eff - 2`` must start in
    ``|0>``; they are returned to ``|0>``.
    """
    if g.name != MCROT:
        raise CircuitError(f"expected MCROT, got {g.name}")

    def core(c, t):
        if c is None:
            return _uncontrolled(t, g.theta, g.phi)
        return _controlled_core(c, t, g.theta, g.phi)

    return _lower_controlled(g, ancilla_base, width, core)


def lower_mcx(g: Gate, ancilla_base: int, width: int | None = None) -> list[Gate]:
    """Multi-controlled X through the same ladder, with a CNOT as the core."""
    if g.name != MCX:
        raise CircuitError(f"expected MCX, got {g.name}")

    def core(c, t):
        return [x_gate(t)] if c is None else [cnot(c, t)]

    return _lower_controlled(g, ancilla_base, width, core)


def lower(circuit: Circuit) -> Circuit:
    """Replace every high-level gate; ladder ancillas are pooled after the existing ones."""
    base = circuit.width
    demand = max((ancilla_demand(g) for g in circuit.gates), default=0)
    width = base + demand
    gates: list[Gate] = []
    for g in circuit.gates:
        if g.name == MCROT:
            gates += lower_mcrot(g, base, width)
        elif g.name == MCX:
            gates += lower_mcx(g, base, width)
        else:
            gates.append(g)
    return Circuit(circuit.n_main, circuit.n_ancilla + demand, tuple(gates))


def count_gates(circuit: Circuit) -> GateCounts:
    """Tally Toffoli, CNOT and one-qubit gates of a lowered circuit."""
    tof = cx = single = 0
    for g in circuit.gates:
        if g.name == CCX:
            tof += 1
        elif g.name == CNOT:
            cx += 1
        elif g.name in (MCROT, MCX):
            raise CircuitError("circuit is not lowered")
        else:
            single += 1
    return GateCounts(tof, cx, single)


def analytic_cost_mcrot(k_eff: int, hamming_weight: int, n: int | None = None) -> GateCounts:
    """Analytic count for a one-qubit gate with ``k_eff >= 2`` controls.

    ``hamming_weight`` is the number of controls that read ``1``; every other
    control costs an X pair.  ``n`` is accepted for signature compatibility
    and ignored: only control qubits are conjugated.
    """
    if k_eff < 2:
        raise ValueError("analytic count defined for k_eff >= 2")
    if not 0 <= hamming_weight <= k_eff:
        raise ValueError("hamming weight out of range")
    return GateCounts(2 * (k_eff - 1), 2, 4 + 2 * (k_eff - hamming_weight))
