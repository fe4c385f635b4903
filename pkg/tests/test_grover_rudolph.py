import math

import numpy as np
import pytest
from hypothesis import given

from sparsegr.core import AngleTable, CircuitError, SparseVector
from sparsegr.grover_rudolph import (
    build_circuit,
    coarse_grain,
    coarse_levels,
    densify,
    find_angles,
    find_sparse_angles,
    gr_circuit,
)
from sparsegr.lowering import lower
from sparsegr.simulator import fidelity, simulate

from conftest import random_vector, sparse_vectors

A, B = math.sqrt(1 / 3), math.sqrt(2 / 3)


def assert_tables_equal(t1: AngleTable, t2: AngleTable, tol=1e-12):
    assert t1.n == t2.n
    for l1, l2 in zip(t1.levels, t2.levels):
        assert set(l1) == set(l2)
        for key in l1:
            assert abs(l1[key][0] - l2[key][0]) <= tol
            assert abs(l1[key][1] - l2[key][1]) <= tol


def test_coarse_grain_worked_example(worked_example):
    psi2 = coarse_grain(worked_example)
    assert psi2.n == 2 and psi2.locations == (0, 3)
    assert np.allclose(psi2.amplitudes, [A, B], atol=1e-15)
    psi1 = coarse_grain(psi2)
    assert psi1.locations == (0, 1)
    assert np.allclose(psi1.amplitudes, [A, B], atol=1e-15)


def test_coarse_grain_single_entry():
    v = coarse_grain(SparseVector(1, (0,), (1,)))
    assert v.n == 0 and v.entries == [(0, 1)]


def test_coarse_grain_keeps_phase_of_zero_child():
    v = SparseVector(1, (0, 1), (0.6j, -0.8))
    (z,) = coarse_grain(v).amplitudes
    assert abs(z - 1j) < 1e-15
    # a lone one-child yields a positive real parent
    (w,) = coarse_grain(SparseVector(1, (1,), (-1j,))).amplitudes
    assert w == 1


@given(sparse_vectors(max_n=7))
def test_probability_conservation_and_sparsity(v):
    levels = coarse_levels(v.normalized())
    assert levels[0].entries[0][0] == 0 and abs(abs(levels[0].amplitudes[0]) - 1) < 1e-12
    for lo, hi in zip(levels, levels[1:]):
        assert lo.d <= hi.d
        dense_lo, dense_hi = lo.to_dense(), hi.to_dense()
        probs = np.abs(dense_hi) ** 2
        assert np.allclose(np.abs(dense_lo) ** 2, probs[0::2] + probs[1::2], atol=1e-12)


def test_find_angles_worked_example(worked_example):
    expected = AngleTable(({"": (2 * math.acos(A), 0.0)}, {"1": (math.pi, 0.0)}, {"00": (math.pi, 0.0)}))
    assert_tables_equal(find_angles(worked_example), expected)
    assert_tables_equal(find_sparse_angles(worked_example), expected)


def test_basis_state_zero_has_empty_table():
    for n in (1, 3, 6):
        t = find_sparse_angles(SparseVector(n, (0,), (1,)))
        assert all(len(level) == 0 for level in t.levels)
        assert_tables_equal(t, find_angles(SparseVector(n, (0,), (1,))))


def test_one_qubit_complex():
    v = SparseVector(1, (0, 1), (1 / math.sqrt(2), 1j / math.sqrt(2)))
    t = find_sparse_angles(v)
    theta, phi = t.levels[0][""]
    assert abs(theta - math.pi / 2) < 1e-12 and abs(phi - math.pi / 2) < 1e-12
    # oracle: simulate the single rotation and compare amplitudes directly
    amps = simulate(build_circuit(t, 1)).amplitudes
    assert np.allclose(amps, v.to_dense(), atol=1e-12)


@pytest.mark.parametrize("loc", [0, 1, 5, 6, 7])
def test_single_entry_traces_bits(loc):
    t = find_sparse_angles(SparseVector(3, (loc,), (1,)))
    bitstr = format(loc, "03b")
    for k, level in enumerate(t.levels):
        assert len(level) <= 1
        if bitstr[k] == "1":
            assert level == {bitstr[:k]: (math.pi, 0.0)}
        else:
            assert level == {}


def test_adjacent_pair_merges():
    v = SparseVector(2, (2, 3), (1 / math.sqrt(2), 1 / math.sqrt(2)))
    t = find_sparse_angles(v)
    assert t.levels[0].keys() == {""} and t.levels[1].keys() == {"1"}
    assert abs(t.levels[0][""][0] - math.pi) < 1e-12 and t.levels[0][""][1] == 0
    assert abs(t.levels[1]["1"][0] - math.pi / 2) < 1e-12 and t.levels[1]["1"][1] == 0
    assert_tables_equal(t, find_angles(v))


@given(sparse_vectors(max_n=8, max_d=40))
def test_sparse_matches_dense(v):
    v = v.normalized()
    assert_tables_equal(find_sparse_angles(v), find_angles(densify(v)))


@given(sparse_vectors(max_n=8, max_d=40))
def test_angle_ranges_and_table_size(v):
    t = find_sparse_angles(v.normalized())
    for k, level in enumerate(t.levels):
        assert len(level) <= min(2**k, v.d)
        for key, (theta, phi) in level.items():
            assert len(key) == k and set(key) <= {"0", "1"}
            assert 0 <= theta <= math.pi
            assert -2 * math.pi < phi < 2 * math.pi


def test_build_circuit_worked_example(worked_example):
    c = build_circuit(find_sparse_angles(worked_example), 3)
    assert [(g.pattern, g.qubits[0]) for g in c.gates] == [("", 0), ("1", 1), ("00", 2)]
    assert abs(c.gates[0].theta - 2 * math.acos(A)) < 1e-12
    assert c.gates[1].theta == c.gates[2].theta == math.pi
    amps = simulate(c).amplitudes
    expect = np.zeros(8)
    expect[1], expect[6] = A, B
    assert np.allclose(amps, expect, atol=1e-12)


def test_build_circuit_empty_and_too_deep():
    c = build_circuit(AngleTable(({}, {})), 2)
    assert len(c) == 0
    assert simulate(c).amplitudes[0] == 1
    with pytest.raises(CircuitError):
        build_circuit(AngleTable(({}, {}, {})), 2)


def test_build_circuit_orders_patterns():
    v = random_vector(np.random.default_rng(3), 5, 12)
    c = build_circuit(find_sparse_angles(v), 5)
    keys = [(g.qubits[0], g.pattern) for g in c.gates]
    assert keys == sorted(keys)


@given(sparse_vectors(max_n=6, max_d=20))
def test_end_to_end_fidelity_small(v):
    circ = lower(gr_circuit(v))
    assert fidelity(simulate(circ), v) >= 1 - 1e-9


@pytest.mark.parametrize("n, d", [(8, 5), (10, 17), (12, 32), (12, 1), (4, 16)])
@pytest.mark.parametrize("real", [False, True])
def test_end_to_end_fidelity_sweep(n, d, real):
    rng = np.random.default_rng(n * 100 + d)
    for _ in range(5):
        v = random_vector(rng, n, d, real=real)
        assert fidelity(simulate(lower(gr_circuit(v)), "sparse"), v) >= 1 - 1e-9
