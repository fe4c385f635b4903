import math

import pytest
from hypothesis import given

from sparsegr.core import (
    Circuit,
    CircuitError,
    ControlPattern,
    GateCounts,
    ParseError,
    SparseVector,
    bits,
    circuit_to_text,
    cnot,
    mcrot,
    mcx,
    normalize,
    parse_circuit,
    parse_sparse_vector,
    phase,
    ry,
    serialize_sparse_vector,
    toffoli,
    x_gate,
)
from sparsegr.lowering import count_gates

from conftest import sparse_vectors


def test_parse_worked_example():
    v = parse_sparse_vector("n=3\n1 0.57735 0\n6 0.8165 0\n")
    assert v.n == 3
    assert v.entries == [(1, 0.57735), (6, 0.8165)]


def test_parse_basis_state():
    v = parse_sparse_vector("n=1\n0 1 0\n")
    assert v.entries == [(0, 1)]


def test_parse_sorts_locations():
    v = parse_sparse_vector("n=2\n3 0 0.5\n0 0.5 0\n")
    assert v.entries == [(0, 0.5), (3, 0.5j)]


def test_parse_comments_and_blank_lines():
    v = parse_sparse_vector("# header\n\nn=2\n# entry\n2 1 0\n")
    assert v.entries == [(2, 1)]


@pytest.mark.parametrize(
    "text",
    [
        "n=2\n1 1 0\n1 0.5 0\n",  # duplicate
        "n=2\n4 1 0\n",  # out of range
        "n=2\n1 0 0\n",  # zero amplitude
        "n=2\n1 abc 0\n",  # malformed number
        "n=x\n1 1 0\n",
        "1 1 0\n",  # missing header
        "n=2\n",  # no entries
        "n=2\n1 1 0 7\n",
    ],
)
def test_parse_errors(text):
    with pytest.raises(ParseError):
        parse_sparse_vector(text)


@given(sparse_vectors())
def test_serialize_round_trip(v):
    assert parse_sparse_vector(serialize_sparse_vector(v)) == v


def test_normalize_examples():
    a, b = math.sqrt(1 / 3), math.sqrt(2 / 3)
    v = SparseVector(3, (1, 6), (a, b))
    w = normalize(v)
    assert w.locations == (1, 6)
    assert abs(w.amplitudes[0] - a) < 1e-15 and abs(w.amplitudes[1] - b) < 1e-15
    assert normalize(SparseVector(1, (0,), (2,))).amplitudes == (1,)
    h = normalize(SparseVector(1, (0, 1), (1, 1))).amplitudes
    assert all(abs(x - 1 / math.sqrt(2)) < 1e-15 for x in h)


@given(sparse_vectors())
def test_normalize_unit_norm_and_idempotent(v):
    w = v.normalized()
    assert abs(w.norm() - 1) < 1e-12
    ww = w.normalized()
    assert all(abs(a - b) <= 1e-15 for a, b in zip(w.amplitudes, ww.amplitudes))


@pytest.mark.parametrize(
    "locs, amps",
    [((), ()), ((1, 1), (1, 1)), ((2, 1), (1, 1)), ((4,), (1,)), ((0,), (0,))],
)
def test_sparse_vector_invariants(locs, amps):
    with pytest.raises(ValueError):
        SparseVector(2, locs, amps)


def test_bits_big_endian():
    assert bits(6, 3) == "110"
    assert bits(1, 3) == "001"
    assert bits(0, 0) == ""


def test_control_pattern():
    cp = ControlPattern("1e0", 3)
    assert cp.controls == [(0, 1), (2, 0)]
    assert cp.k_eff == 2
    with pytest.raises(CircuitError):
        ControlPattern("10", 1)
    with pytest.raises(CircuitError):
        ControlPattern("1x", 3)


def test_gate_operand_checks():
    with pytest.raises(CircuitError):
        cnot(1, 1)
    with pytest.raises(CircuitError):
        Circuit(2, 0, (x_gate(2),))
    with pytest.raises(CircuitError):
        Circuit(2, 0, (mcrot("11", 1.0, 0.0, 2),))


def test_circuit_text_round_trip():
    c = Circuit(
        3,
        2,
        (
            x_gate(0),
            cnot(0, 1),
            toffoli(0, 1, 3),
            ry(0.1234567890123, 2),
            phase(-2.5, 4),
            mcrot("1e", 1.0, 0.5, 2),
            mcrot("", 0.3, 0.0, 0),
            mcx("010", 3),
        ),
    )
    text = circuit_to_text(c)
    assert text.startswith("qubits 3\nancillas 2\n")
    assert parse_circuit(text) == c


def test_parse_circuit_errors():
    with pytest.raises(ParseError):
        parse_circuit("X 0\n")
    with pytest.raises(ParseError):
        parse_circuit("qubits 1\nFOO 0\n")
    with pytest.raises(ParseError):
        parse_circuit("qubits 1\nCNOT 0\n")
    with pytest.raises(ParseError):
        parse_circuit("qubits 1\nX 3\n")


def test_gate_counts_algebra():
    a, b, c = GateCounts(1, 2, 3), GateCounts(4, 0, 1), GateCounts(0, 7, 2)
    assert (a + b) + c == a + (b + c)
    assert a + b == b + a
    assert a + GateCounts() == a
    assert a <= a + b
    assert not (a + b <= a)


def test_counts_of_concatenation_are_additive():
    c1 = Circuit(3, 1, (x_gate(0), cnot(0, 1), toffoli(0, 1, 3)))
    c2 = Circuit(3, 0, (ry(0.2, 2), phase(0.1, 1), toffoli(0, 1, 2)))
    assert count_gates(c1 + c2) == count_gates(c1) + count_gates(c2)
    assert count_gates(Circuit(2)) == GateCounts(0, 0, 0)
