from __future__ import annotations

import numpy as np
import pytest

from ftcurve import _backend, _kernels_py
from ftcurve.generators import trefoil

pytestmark = pytest.mark.skipif(not _backend.compiled_available(), reason="compiled kernels not built")


@pytest.fixture(scope="module")
def fast():
    return _backend.load("cython")


def test_selected_at_import():
    assert _backend.BACKEND in ("cython", "python")
    assert _backend.load("python").frechet_dp is _kernels_py.frechet_dp


def test_frechet(fast):
    rng = np.random.default_rng(0)
    for _ in range(50):
        P = rng.normal(size=(int(rng.integers(1, 30)), 3))
        Q = rng.normal(size=(int(rng.integers(1, 30)), 3))
        assert fast.frechet_dp(P, Q) == _kernels_py.frechet_dp(P, Q)


@pytest.mark.parametrize("closed", [True, False])
def test_distortion_grid(fast, closed):
    V = np.ascontiguousarray(trefoil(40).vertices)
    a = fast.distortion_grid(V, closed, 16)
    b = _kernels_py.distortion_grid(V, closed, 16)
    for x, y in zip(a[:3], b[:3]):
        np.testing.assert_allclose(x, y, rtol=1e-13, atol=0)
    assert a[3] == b[3]


@pytest.mark.parametrize("closed", [True, False])
def test_count_extrema(fast, closed):
    rng = np.random.default_rng(1)
    H = rng.normal(size=(500, 25))
    H[::7, 3] = H[::7, 4]  # plateaus
    H[5] = 1.0  # constant row
    np.testing.assert_array_equal(fast.count_extrema_batch(H, closed, 1e-12),
                                  _kernels_py.count_extrema_batch(H, closed, 1e-12))


@pytest.mark.parametrize("closed", [True, False])
def test_tc_batch(fast, closed):
    rng = np.random.default_rng(2)
    X = rng.normal(size=(200, 15, 2))
    X[3, 4] = X[3, 5]  # duplicate vertex
    np.testing.assert_allclose(fast.tc_batch(X, closed), _kernels_py.tc_batch(X, closed), rtol=1e-12, atol=1e-12)


def test_min_ball(fast):
    rng = np.random.default_rng(3)
    for d in (1, 2, 3, 4):
        for _ in range(100):
            P = rng.normal(size=(int(rng.integers(1, 60)), d))
            order = rng.permutation(len(P))
            ca, ra = fast.min_ball(P, order)
            cb, rb = _kernels_py.min_ball(P, order)
            assert ra == pytest.approx(rb, rel=1e-9, abs=1e-12)
            assert np.all(np.linalg.norm(P - ca, axis=1) <= ra * (1 + 1e-9) + 1e-12)


def test_env_override(monkeypatch):
    import importlib
    monkeypatch.setenv("FTCURVE_BACKEND", "python")
    mod = importlib.reload(_backend)
    try:
        assert mod.BACKEND == "python"
    finally:
        monkeypatch.delenv("FTCURVE_BACKEND")
        importlib.reload(_backend)
