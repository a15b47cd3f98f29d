from __future__ import annotations

import itertools

import numpy as np
import pytest

from ftcurve import _backend


@pytest.fixture(params=["python"] + (["cython"] if _backend.compiled_available() else []))
def backend(request, monkeypatch):
    """Run a test against each available kernel implementation."""
    monkeypatch.setattr(_backend, "kernels", _backend.load(request.param))
    return request.param


def brute_frechet(P, Q):
    """Min over all monotone couplings of the max coupled distance."""
    n, m = len(P), len(Q)
    best = np.inf

    def walk(i, j, worst):
        nonlocal best
        worst = max(worst, float(np.linalg.norm(P[i] - Q[j])))
        if worst >= best:
            return
        if i == n - 1 and j == m - 1:
            best = worst
            return
        if i + 1 < n:
            walk(i + 1, j, worst)
        if j + 1 < m:
            walk(i, j + 1, worst)
        if i + 1 < n and j + 1 < m:
            walk(i + 1, j + 1, worst)

    walk(0, 0, 0.0)
    return best


def brute_min_ball(P):
    """Smallest ball over all support subsets of size <= d + 1."""
    P = np.asarray(P, float)
    n, d = P.shape
    best_r = np.inf
    best_c = None
    for k in range(1, min(n, d + 1) + 1):
        for S in itertools.combinations(range(n), k):
            A = P[list(S)]
            if k == 1:
                c = A[0]
            else:
                M = 2 * (A[1:] - A[0])
                rhs = (A[1:] ** 2).sum(1) - (A[0] ** 2).sum()
                # circumcenter within the affine hull of the support
                B = (A[1:] - A[0]).T
                try:
                    lam = np.linalg.solve(M @ B, rhs - M @ A[0])
                except np.linalg.LinAlgError:
                    continue
                c = A[0] + B @ lam
            r = np.linalg.norm(P - c, axis=1).max()
            if r < best_r - 1e-15:
                best_r, best_c = r, c
    return best_c, best_r


def mp_central_difference(V, xi, closed, t="1e-7", dps=40):
    """``(Len(V + t xi) - Len(V - t xi)) / 2t`` evaluated in extended precision."""
    import mpmath

    with mpmath.workdps(dps):
        t = mpmath.mpf(t)
        n, d = V.shape
        m = n if closed else n - 1

        def L(s):
            P = [[mpmath.mpf(float(V[i, j])) + s * mpmath.mpf(float(xi[i, j])) for j in range(d)] for i in range(n)]
            return mpmath.fsum(mpmath.sqrt(mpmath.fsum((P[(i + 1) % n][j] - P[i][j]) ** 2 for j in range(d)))
                               for i in range(m))

        return float((L(t) - L(-t)) / (2 * t))
