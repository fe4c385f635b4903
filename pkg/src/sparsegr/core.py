"""Domain types, the circuit IR and the text formats shared by every pass.

Conventions: qubit 0 is the most significant bit of a basis-state index
(big-endian), so index 6 on three qubits is ``|110>``.  Ancilla qubits are
numbered after the main register and occupy the least significant bits of a
full-register index.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Iterable, Mapping, Sequence

PATTERN_SYMBOLS = frozenset("01e")

NORM_TOL = 1e-12


class ParseError(ValueError):
    """Malformed sparse-vector or circuit document."""


class CircuitError(ValueError):
    """Structurally invalid circuit or gate."""


def bits(index: int, width: int) -> str:
    """Big-endian bit string of ``index``; ``bits(6, 3) == '110'``."""
    if width == 0:
        return ""
    return format(index, f"0{width}b")


def hamming(x: int) -> int:
    return bin(x).count("1")


# ---------------------------------------------------------------------------
# sparse vectors


@dataclass(frozen=True)
class SparseVector:
    """Nonzero amplitudes of a vector of dimension ``2**n``.

    ``locations`` are strictly increasing; ``amplitudes`` are the matching
    nonzero values.  ``n == 0`` is allowed and denotes the one-dimensional
    space (used for the trivial coarse-graining level).
    """

    n: int
    locations: tuple[int, ...]
    amplitudes: tuple[complex, ...]

    def __post_init__(self):
        locs = tuple(int(x) for x in self.locations)
        amps = tuple(complex(a) for a in self.amplitudes)
        object.__setattr__(self, "locations", locs)
        object.__setattr__(self, "amplitudes", amps)
        if self.n < 0:
            raise ValueError(f"qubit count must be non-negative, got {self.n}")
        if len(locs) != len(amps):
            raise ValueError("locations and amplitudes differ in length")
        if not locs:
            raise ValueError("sparse vector has no nonzero entries")
        size = 1 << self.n
        for prev, cur in zip(locs, locs[1:]):
            if cur <= prev:
                raise ValueError("locations must be strictly increasing")
        if locs[0] < 0 or locs[-1] >= size:
            raise ValueError(f"location out of range [0, {size})")
        for a in amps:
            if a == 0:
                raise ValueError("zero amplitude stored in sparse vector")
            if not (math.isfinite(a.real) and math.isfinite(a.imag)):
                raise ValueError("non-finite amplitude")

    @classmethod
    def from_entries(cls, n: int, entries: Iterable[tuple[int, complex]]) -> SparseVector:
        """Build from unordered ``(location, amplitude)`` pairs."""
        items = sorted((int(loc), complex(a)) for loc, a in entries)
        for (a, _), (b, _) in zip(items, items[1:]):
            if a == b:
                raise ValueError(f"duplicate location {a}")
        return cls(n, tuple(i for i, _ in items), tuple(a for _, a in items))

    @classmethod
    def from_dense(cls, psi: Sequence[complex]) -> SparseVector:
        size = len(psi)
        n = size.bit_length() - 1
        if size != 1 << n:
            raise ValueError("dense vector length must be a power of two")
        return cls.from_entries(n, ((i, a) for i, a in enumerate(psi) if a != 0))

    @property
    def d(self) -> int:
        return len(self.locations)

    @property
    def entries(self) -> list[tuple[int, complex]]:
        return list(zip(self.locations, self.amplitudes))

    def norm(self) -> float:
        return math.sqrt(math.fsum(abs(a) ** 2 for a in self.amplitudes))

    def normalized(self) -> SparseVector:
        nrm = self.norm()
        return SparseVector(self.n, self.locations, tuple(a / nrm for a in self.amplitudes))

    def to_dense(self):
        import numpy as np

        psi = np.zeros(1 << self.n, dtype=complex)
        psi[list(self.locations)] = self.amplitudes
        return psi


def normalize(v: SparseVector) -> SparseVector:
    return v.normalized()


def parse_sparse_vector(text: str) -> SparseVector:
    """Parse the ``n=<int>`` / ``<loc> <re> <im>`` text format."""
    n = None
    entries: list[tuple[int, complex]] = []
    seen: set[int] = set()
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        if n is None:
            key, sep, value = line.partition("=")
            if not sep or key.strip() != "n":
                raise ParseError(f"line {lineno}: expected 'n=<int>' header")
            try:
                n = int(value)
            except ValueError:
                raise ParseError(f"line {lineno}: bad qubit count {value.strip()!r}") from None
            if n < 1:
                raise ParseError(f"line {lineno}: qubit count must be positive")
            continue
        fields = line.split()
        if len(fields) not in (2, 3):
            raise ParseError(f"line {lineno}: expected '<location> <re> <im>'")
        try:
            loc = int(fields[0])
            re = float(fields[1])
            im = float(fields[2]) if len(fields) == 3 else 0.0
        except ValueError:
            raise ParseError(f"line {lineno}: malformed number in {line!r}") from None
        if not (math.isfinite(re) and math.isfinite(im)):
            raise ParseError(f"line {lineno}: non-finite amplitude")
        if loc < 0 or loc >= 1 << n:
            raise ParseError(f"line {lineno}: location {loc} outside [0, 2^{n})")
        if loc in seen:
            raise ParseError(f"line {lineno}: duplicate location {loc}")
        if re == 0 and im == 0:
            raise ParseError(f"line {lineno}: zero amplitude at location {loc}")
        seen.add(loc)
        entries.append((loc, complex(re, im)))
    if n is None:
        raise ParseError("missing 'n=<int>' header")
    if not entries:
        raise ParseError("no entries")
    return SparseVector.from_entries(n, entries)


def serialize_sparse_vector(v: SparseVector) -> str:
    lines = [f"n={v.n}"]
    lines += [f"{loc} {a.real!r} {a.imag!r}" for loc, a in v.entries]
    return "\n".join(lines) + "\n"


# ---------------------------------------------------------------------------
# gates and circuits


@dataclass(frozen=True)
class ControlPattern:
    """Required values of qubits ``0..len(pattern)-1``; ``'e'`` means free."""

    pattern: str
    target: int

    def __post_init__(self):
        if not set(self.pattern) <= PATTERN_SYMBOLS:
            raise CircuitError(f"bad control pattern {self.pattern!r}")
        if self.target < len(self.pattern) and self.pattern[self.target] != "e":
            raise CircuitError("target qubit is also a control")

    @property
    def controls(self) -> list[tuple[int, int]]:
        """``(qubit, required bit)`` for every non-wildcard position."""
        return [(q, int(s)) for q, s in enumerate(self.pattern) if s != "e"]

    @property
    def k_eff(self) -> int:
        return len(self.pattern) - self.pattern.count("e")


# primitive and high-level gate names
X, CNOT, CCX, RY, P, MCROT, MCX = "X", "CNOT", "CCX", "RY", "P", "MCROT", "MCX"
PRIMITIVES = frozenset({X, CNOT, CCX, RY, P})


@dataclass(frozen=True)
class Gate:
    name: str
    qubits: tuple[int, ...]
    theta: float = 0.0
    phi: float = 0.0
    pattern: str = ""

    def __post_init__(self):
        arity = {X: 1, CNOT: 2, CCX: 3, RY: 1, P: 1, MCROT: 1, MCX: 1}
        if self.name not in arity:
            raise CircuitError(f"unknown gate {self.name!r}")
        if len(self.qubits) != arity[self.name]:
            raise CircuitError(f"{self.name} takes {arity[self.name]} qubit(s)")
        if self.name in (MCROT, MCX):
            ControlPattern(self.pattern, self.qubits[0])
        if len(set(self.operands)) != len(self.operands):
            raise CircuitError(f"repeated operand in {self}")

    @property
    def control(self) -> ControlPattern:
        return ControlPattern(self.pattern, self.qubits[0])

    @property
    def operands(self) -> tuple[int, ...]:
        if self.name in (MCROT, MCX):
            return tuple(q for q, _ in self.control.controls) + self.qubits
        return self.qubits

    @property
    def is_primitive(self) -> bool:
        return self.name in PRIMITIVES


def x_gate(q: int) -> Gate:
    return Gate(X, (q,))


def cnot(c: int, t: int) -> Gate:
    return Gate(CNOT, (c, t))


def toffoli(c1: int, c2: int, t: int) -> Gate:
    return Gate(CCX, (c1, c2, t))


def ry(theta: float, q: int) -> Gate:
    return Gate(RY, (q,), theta=theta)


def phase(phi: float, q: int) -> Gate:
    return Gate(P, (q,), phi=phi)


def mcrot(pattern: str, theta: float, phi: float, target: int) -> Gate:
    """Multi-controlled ``P(phi) @ Ry(theta)`` on ``target``."""
    return Gate(MCROT, (target,), theta=theta, phi=phi, pattern=pattern)


def mcx(pattern: str, target: int) -> Gate:
    """Multi-controlled X; the ancilla flip of the cycle circuits."""
    return Gate(MCX, (target,), pattern=pattern)


@dataclass(frozen=True)
class Circuit:
    n_main: int
    n_ancilla: int = 0
    gates: tuple[Gate, ...] = ()

    def __post_init__(self):
        object.__setattr__(self, "gates", tuple(self.gates))
        width = self.width
        for g in self.gates:
            for q in g.operands:
                if not 0 <= q < width:
                    raise CircuitError(f"{g} addresses qubit {q} outside width {width}")

    @property
    def width(self) -> int:
        return self.n_main + self.n_ancilla

    @property
    def is_lowered(self) -> bool:
        return all(g.is_primitive for g in self.gates)

    def __add__(self, other: Circuit) -> Circuit:
        if self.n_main != other.n_main:
            raise CircuitError("cannot concatenate circuits on different main registers")
        return Circuit(
            self.n_main, max(self.n_ancilla, other.n_ancilla), self.gates + other.gates
        )

    def __len__(self) -> int:
        return len(self.gates)


def gate_to_text(g: Gate) -> str:
    if g.name == X:
        return f"X {g.qubits[0]}"
    if g.name == CNOT:
        return "CNOT {} {}".format(*g.qubits)
    if g.name == CCX:
        return "CCX {} {} {}".format(*g.qubits)
    if g.name == RY:
        return f"RY {g.theta!r} {g.qubits[0]}"
    if g.name == P:
        return f"P {g.phi!r} {g.qubits[0]}"
    if g.name == MCROT:
        return f"MCROT {g.pattern or '-'} {g.theta!r} {g.phi!r} {g.qubits[0]}"
    return f"MCX {g.pattern or '-'} {g.qubits[0]}"


def circuit_to_text(c: Circuit) -> str:
    lines = [f"qubits {c.n_main}", f"ancillas {c.n_ancilla}"]
    lines += [gate_to_text(g) for g in c.gates]
    return "\n".join(lines) + "\n"


def parse_circuit(text: str) -> Circuit:
    """Inverse of :func:`circuit_to_text`.  An empty pattern is written ``-``."""
    header: dict[str, int] = {}
    gates: list[Gate] = []
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        op, *args = line.split()
        try:
            if op in ("qubits", "ancillas"):
                header[op] = int(args[0])
            elif op == X:
                gates.append(x_gate(int(args[0])))
            elif op == CNOT:
                gates.append(cnot(int(args[0]), int(args[1])))
            elif op == CCX:
                gates.append(toffoli(*(int(a) for a in args[:3])))
            elif op == RY:
                gates.append(ry(float(args[0]), int(args[1])))
            elif op == P:
                gates.append(phase(float(args[0]), int(args[1])))
            elif op == MCROT:
                pat = "" if args[0] == "-" else args[0]
                gates.append(mcrot(pat, float(args[1]), float(args[2]), int(args[3])))
            elif op == MCX:
                pat = "" if args[0] == "-" else args[0]
                gates.append(mcx(pat, int(args[1])))
            else:
                raise ParseError(f"line {lineno}: unknown instruction {op!r}")
        except (IndexError, ValueError) as exc:
            if isinstance(exc, ParseError):
                raise
            raise ParseError(f"line {lineno}: malformed {op} instruction: {exc}") from None
    if "qubits" not in header:
        raise ParseError("missing 'qubits <n>' header")
    try:
        return Circuit(header["qubits"], header.get("ancillas", 0), tuple(gates))
    except CircuitError as exc:
        raise ParseError(str(exc)) from None


# ---------------------------------------------------------------------------
# angle tables and gate counts


@dataclass(frozen=True)
class AngleTable:
    """Per-level maps from control pattern to ``(theta, phi)``.

    ``levels[k]`` holds the rotations targeting qubit ``k``; its keys are
    ``k``-symbol patterns (``''`` for the uncontrolled top level).
    """

    levels: tuple[Mapping[str, tuple[float, float]], ...]

    def __post_init__(self):
        object.__setattr__(self, "levels", tuple(dict(lv) for lv in self.levels))

    @property
    def n(self) -> int:
        return len(self.levels)

    def __len__(self) -> int:
        return sum(len(lv) for lv in self.levels)

    def dump(self) -> str:
        lines = []
        for k, level in enumerate(self.levels):
            for pat in sorted(level):
                theta, phi = level[pat]
                lines.append(f"{k} {pat or '-'} {theta!r} {phi!r}")
        return "\n".join(lines) + ("\n" if lines else "")


@dataclass(frozen=True)
class GateCounts:
    toffoli: int = 0
    cnot: int = 0
    single_qubit: int = 0

    def __add__(self, other: GateCounts) -> GateCounts:
        return GateCounts(
            self.toffoli + other.toffoli,
            self.cnot + other.cnot,
            self.single_qubit + other.single_qubit,
        )

    def __le__(self, other: GateCounts) -> bool:
        """Component-wise comparison."""
        return (
            self.toffoli <= other.toffoli
            and self.cnot <= other.cnot
            and self.single_qubit <= other.single_qubit
        )

    def scaled(self, factor: int) -> GateCounts:
        return GateCounts(self.toffoli * factor, self.cnot * factor, self.single_qubit * factor)

    @property
    def total(self) -> int:
        return self.toffoli + self.cnot + self.single_qubit


ZERO_COUNTS = GateCounts()


@dataclass(frozen=True)
class CostWeights:
    """Per-gate costs used by the analytic cost models."""

    toffoli: float = 1.0
    cnot: float = 1.0
    single_qubit: float = 1.0

    def cost(self, counts: GateCounts) -> float:
        return (
            self.toffoli * counts.toffoli
            + self.cnot * counts.cnot
            + self.single_qubit * counts.single_qubit
        )


__all__ = [
    "AngleTable",
    "Circuit",
    "CircuitError",
    "ControlPattern",
    "CostWeights",
    "Gate",
    "GateCounts",
    "ParseError",
    "SparseVector",
    "ZERO_COUNTS",
    "bits",
    "circuit_to_text",
    "cnot",
    "hamming",
    "mcrot",
    "mcx",
    "normalize",
    "parse_circuit",
    "parse_sparse_vector",
    "phase",
    "ry",
    "serialize_sparse_vector",
    "toffoli",
    "x_gate",
]
