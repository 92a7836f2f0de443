from __future__ import annotations

import numpy as np
import pytest

from lsqcentrality import florentine_fixture, from_matrix, gnp_random

# (criterion, passed, detail) rows collected by tests/test_acceptance.py
ACCEPTANCE_RESULTS: list[tuple[str, bool, str]] = []


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE_RESULTS:
        return
    terminalreporter.section("acceptance criteria")
    for name, ok, detail in ACCEPTANCE_RESULTS:
        terminalreporter.write_line(f"{'PASS' if ok else 'FAIL'}  {name}: {detail}")


def k3():
    return from_matrix(np.ones((3, 3)) - np.eye(3), labels=["a", "b", "c"])


def star4():
    A = np.zeros((4, 4))
    A[0, 1:] = A[1:, 0] = 1.0
    return from_matrix(A, labels=["hub", "l1", "l2", "l3"])


def single_directed_edge():
    return from_matrix(np.array([[0.0, 1.0], [0.0, 0.0]]), labels=["u", "v"], directed=True)


def directed_cycle3():
    A = np.zeros((3, 3))
    A[0, 1] = A[1, 2] = A[2, 0] = 1.0
    return from_matrix(A, labels=["a", "b", "c"], directed=True)


def random_undirected_suite(count=24, max_n=12, seed=2024):
    """Random loop-free undirected graphs with at least one edge."""
    rng = np.random.default_rng(seed)
    out = []
    while len(out) < count:
        n = int(rng.integers(3, max_n + 1))
        net = gnp_random(n, float(rng.uniform(0.15, 0.7)), seed=int(rng.integers(1 << 31)))
        if net.matrix.sum() > 0:
            out.append(net)
    return out


def random_directed_suite(count=24, max_n=10, seed=4048):
    rng = np.random.default_rng(seed)
    out = []
    while len(out) < count:
        n = int(rng.integers(2, max_n + 1))
        net = gnp_random(n, float(rng.uniform(0.15, 0.7)), seed=int(rng.integers(1 << 31)),
                         directed=True)
        if net.matrix.sum() > 0:
            out.append(net)
    return out


def same_order(a, b, rtol=1e-9):
    """True when no pair of nodes is strictly ordered one way by ``a`` and
    the other way by ``b``; near-equal values count as ties."""
    a = np.asarray(a, float)
    b = np.asarray(b, float)
    ta = rtol * max(np.abs(a).max(), 1e-300)
    tb = rtol * max(np.abs(b).max(), 1e-300)
    da = a[:, None] - a[None, :]
    db = b[:, None] - b[None, :]
    clash = ((da > ta) & (db < -tb)) | ((da < -ta) & (db > tb))
    return not clash.any()


def rel_err(a, b, zero=1e-12):
    """Largest relative gap; entries of ``b`` below ``zero`` count as exact
    zeros and must be matched to within ``zero`` (else ``inf``)."""
    a = np.asarray(a, float)
    b = np.asarray(b, float)
    d = np.abs(a - b)
    big = np.abs(b) > zero
    if np.any(d[~big] > zero):
        return float("inf")
    return float(np.max(d[big] / np.abs(b[big]), initial=0.0))


@pytest.fixture
def florentine():
    return florentine_fixture()
