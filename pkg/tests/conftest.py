import numpy as np
import pytest
from hypothesis import settings, strategies as st

from sparsegr.core import SparseVector

settings.register_profile("default", deadline=None, max_examples=60)
settings.load_profile("default")

# acceptance criteria record their verdict here; printed after the run
ACCEPTANCE: dict[int, tuple[str, bool, str]] = {}


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for num in sorted(ACCEPTANCE):
        title, ok, detail = ACCEPTANCE[num]
        terminalreporter.write_line(f"[{'PASS' if ok else 'FAIL'}] {num:2d}. {title} -- {detail}")


@st.composite
def sparse_vectors(draw, max_n=8, max_d=24, kind="complex"):
    n = draw(st.integers(1, max_n))
    d = draw(st.integers(1, min(1 << n, max_d)))
    locs = draw(st.lists(st.integers(0, (1 << n) - 1), min_size=d, max_size=d, unique=True))
    mag = st.floats(0.05, 3.0)
    ang = st.floats(-np.pi, np.pi)
    amps = []
    for _ in range(d):
        r = draw(mag)
        a = draw(ang) if kind == "complex" else draw(st.sampled_from([0.0, np.pi]))
        amps.append(r * np.exp(1j * a))
    return SparseVector.from_entries(n, zip(locs, amps))


def random_vector(rng, n, d, real=False):
    locs = rng.choice(1 << n, size=d, replace=False)
    amps = rng.standard_normal(d) + (0 if real else 1j * rng.standard_normal(d))
    return SparseVector.from_entries(n, zip(locs.tolist(), amps)).normalized()


@pytest.fixture
def rng():
    return np.random.default_rng(12345)


@pytest.fixture
def worked_example():
    """The three-qubit vector with sqrt(1/3) at index 1 and sqrt(2/3) at index 6."""
    return SparseVector(3, (1, 6), (np.sqrt(1 / 3), np.sqrt(2 / 3)))
