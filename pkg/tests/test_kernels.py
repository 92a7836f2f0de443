"""The numba and numpy kernels must agree on every input."""

import os
import subprocess
import sys

import numpy as np
import pytest

from lsqcentrality import _kernels, gnp_random, symmetric_eigs

needs_numba = pytest.mark.skipif(_kernels.numba_impl is None, reason="numba not installed")


def _random_model(n, s, seed, tied):
    rng = np.random.default_rng(seed)
    U = rng.normal(size=(n, s))
    V = U if tied else rng.normal(size=(n, s))
    p = rng.normal(size=n)
    q = p if tied else rng.normal(size=n)
    return rng.normal(), rng.normal(), p, q, rng.normal(size=s), U, V


@needs_numba
@pytest.mark.parametrize("seed", range(6))
def test_predict_and_loo_agree(seed):
    n = 5 + seed
    A = gnp_random(n, 0.4, seed=seed, directed=bool(seed % 2)).matrix
    args = _random_model(n, 1 + seed % 3, seed, tied=not seed % 2)
    np.testing.assert_allclose(_kernels.numba_impl["predict"](*args),
                               _kernels.numpy_impl["predict"](*args), rtol=1e-12, atol=1e-12)
    for zr, zc in ((True, True), (True, False), (False, True)):
        a = _kernels.numba_impl["loo_ss"](A, *args, zr, zc)
        b = _kernels.numpy_impl["loo_ss"](A, *args, zr, zc)
        np.testing.assert_allclose(a, b, rtol=1e-11)


@needs_numba
def test_greedy_scores_agree():
    basis = symmetric_eigs(gnp_random(12, 0.3, seed=5).matrix)
    X2 = basis.vectors**2
    diag = X2[:, :2] @ basis.values[:2]
    remaining = np.ones(12, bool)
    remaining[:2] = False
    args = (basis.values, X2, np.sum(X2**2, axis=0), diag, remaining)
    a = _kernels.numba_impl["greedy_scores"](*args)
    b = _kernels.numpy_impl["greedy_scores"](*args)
    np.testing.assert_array_equal(np.isinf(a), np.isinf(b))
    np.testing.assert_allclose(a[remaining], b[remaining], rtol=1e-12)


def test_env_flag_selects_numpy_backend():
    code = "import lsqcentrality as L; print(L.BACKEND)"
    env = dict(os.environ, LSQCENTRALITY_BACKEND="numpy")
    out = subprocess.run([sys.executable, "-c", code], env=env, capture_output=True, text=True)
    assert out.stdout.strip() == "numpy"


def test_bad_env_flag_is_rejected():
    env = dict(os.environ, LSQCENTRALITY_BACKEND="fortran")
    out = subprocess.run([sys.executable, "-c", "import lsqcentrality"], env=env,
                         capture_output=True, text=True)
    assert out.returncode != 0 and "LSQCENTRALITY_BACKEND" in out.stderr
