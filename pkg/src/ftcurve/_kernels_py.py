"""Pure numpy implementations of the hot kernels.

Same signatures and results as the compiled ``_kernels`` module; used when
the extension is not built or ``FTCURVE_BACKEND=python`` is set.
"""

import math

import numpy as np

BACKEND = "python"


def frechet_dp(P, Q):
    p, q = len(P), len(Q)
    dist = np.sqrt(((P[:, None, :] - Q[None, :, :]) ** 2).sum(axis=2))
    ca = np.empty((p, q))
    ca[:, 0] = np.maximum.accumulate(dist[:, 0])
    ca[0, :] = np.maximum.accumulate(dist[0, :])
    for i in range(1, p):
        row_prev = ca[i - 1]
        row = ca[i]
        di = dist[i]
        for j in range(1, q):
            m = row_prev[j]
            if row[j - 1] < m:
                m = row[j - 1]
            if row_prev[j - 1] < m:
                m = row_prev[j - 1]
            row[j] = m if m > di[j] else di[j]
    return float(ca[-1, -1])


def _edge_data(V, closed):
    n = V.shape[0]
    if closed:
        A = V
        B = np.roll(V, -1, axis=0)
    else:
        A = V[:-1]
        B = V[1:]
    D = B - A
    el = np.sqrt((D * D).sum(axis=1))
    cum = np.concatenate(([0.0], np.cumsum(el)))
    return A, D, el, cum, float(cum[-1])


def distortion_grid(V, closed, grid):
    """Scan every pair of distinct edges on a ``grid x grid`` parameter lattice.

    Returns ``(best, bu, bw, coincident)``: ``best[i, j]`` (``i < j``) is the
    largest arclength/chord ratio found on edges ``i`` and ``j`` with its
    lattice parameters ``bu[i, j]``, ``bw[i, j]``; other entries are ``-inf``.
    ``coincident`` is true if two lattice points with positive arclength
    separation coincide in space.
    """
    A, D, el, cum, L = _edge_data(V, closed)
    E = len(el)
    t = np.linspace(0.0, 1.0, grid)
    tiny = 1e-12 * L
    best = np.full((E, E), -np.inf)
    bu = np.zeros((E, E))
    bw = np.zeros((E, E))
    coincident = False
    # points and arclengths of every lattice point on every edge
    P = A[:, None, :] + t[None, :, None] * D[:, None, :]        # (E, g, d)
    S = cum[:-1, None] + t[None, :] * el[:, None]               # (E, g)
    for i in range(E - 1):
        Pi = P[i]                                                # (g, d)
        Si = S[i]
        Pj = P[i + 1:]                                           # (m, g, d)
        Sj = S[i + 1:]
        diff = Pi[None, :, None, :] - Pj[:, None, :, :]          # (m, g, g, d)
        dist = np.sqrt((diff * diff).sum(axis=3))
        ln = np.abs(Si[None, :, None] - Sj[:, None, :])
        if closed:
            ln = np.minimum(ln, L - ln)
        small = dist <= tiny
        if np.any(small & (ln > 1e3 * tiny)):
            coincident = True
        with np.errstate(divide="ignore", invalid="ignore"):
            ratio = np.where(small, -np.inf, ln / np.where(small, 1.0, dist))
        flat = ratio.reshape(ratio.shape[0], -1)
        k = np.argmax(flat, axis=1)
        rows = np.arange(flat.shape[0])
        best[i, i + 1:] = flat[rows, k]
        bu[i, i + 1:] = t[k // grid]
        bw[i, i + 1:] = t[k % grid]
    return best, bu, bw, coincident


def _count_row(h, closed, tol):
    runs = [h[0]]
    for x_prev, x in zip(h[:-1], h[1:]):
        if abs(x - x_prev) > tol:
            runs.append(x)
    if closed and len(runs) > 1 and abs(h[-1] - h[0]) <= tol:
        runs.pop()
    R = len(runs)
    if R == 1:
        return -1
    cnt = 0
    if closed:
        for k in range(R):
            a, b, c = runs[k - 1], runs[k], runs[(k + 1) % R]
            if b > a and b > c:
                cnt += 1
    else:
        for k in range(1, R - 1):
            a, b, c = runs[k - 1], runs[k], runs[k + 1]
            if (b > a and b > c) or (b < a and b < c):
                cnt += 1
    return cnt


def count_extrema_batch(H, closed, tol):
    """Per row of heights: number of local maxima (loop) or interior extrema (arc).

    Runs of consecutive heights within ``tol`` are merged first. Rows whose
    heights are all equal give ``-1``.
    """
    H = np.asarray(H, dtype=float)
    m, n = H.shape
    out = np.empty(m, dtype=np.int64)
    if closed:
        fwd = np.roll(H, -1, axis=1) - H
    else:
        fwd = np.diff(H, axis=1)
    flat = np.any(np.abs(fwd) <= tol, axis=1)
    ok = ~flat
    if np.any(ok):
        F = fwd[ok]
        if closed:
            back = np.roll(F, 1, axis=1)
            out[ok] = np.count_nonzero((back > 0) & (F < 0), axis=1)
        else:
            out[ok] = np.count_nonzero(F[:, :-1] * F[:, 1:] < 0, axis=1)
    for r in np.nonzero(flat)[0]:
        out[r] = _count_row(H[r], closed, tol)
    return out


def _turn(a, b):
    return 2.0 * math.atan2(math.sqrt(((a - b) ** 2).sum()), math.sqrt(((a + b) ** 2).sum()))


def _tc_row(X, closed):
    keep = [X[0]]
    for x in X[1:]:
        if np.any(x != keep[-1]):
            keep.append(x)
    if closed:
        while len(keep) > 1 and np.all(keep[-1] == keep[0]):
            keep.pop()
    if len(keep) < 2:
        return math.nan
    Y = np.array(keep)
    D = (np.roll(Y, -1, axis=0) - Y) if closed else np.diff(Y, axis=0)
    U = D / np.sqrt((D * D).sum(axis=1))[:, None]
    total = 0.0
    ne = len(U)
    rng = range(ne) if closed else range(1, ne)
    for e in rng:
        total += _turn(U[e - 1], U[e])
    return total


def tc_batch(X, closed):
    """Total curvature of each polygon in a stack ``X`` of shape ``(m, n, k)``.

    Consecutive exactly-equal vertices are collapsed; a polygon that collapses
    to a single point gives ``nan``.
    """
    X = np.asarray(X, dtype=float)
    m = X.shape[0]
    D = (np.roll(X, -1, axis=1) - X) if closed else np.diff(X, axis=1)
    nrm = np.sqrt((D * D).sum(axis=2))
    bad = np.any(nrm == 0.0, axis=1)
    out = np.empty(m)
    ok = ~bad
    if np.any(ok):
        U = D[ok] / nrm[ok][:, :, None]
        if closed:
            a = np.roll(U, 1, axis=1)
            b = U
        else:
            a = U[:, :-1]
            b = U[:, 1:]
        na = np.sqrt(((a - b) ** 2).sum(axis=2))
        nb = np.sqrt(((a + b) ** 2).sum(axis=2))
        out[ok] = (2.0 * np.arctan2(na, nb)).sum(axis=1)
    for r in np.nonzero(bad)[0]:
        out[r] = _tc_row(X[r], closed)
    return out


def _circumball(S):
    """Smallest ball with all rows of ``S`` on its boundary (within their affine hull)."""
    c0 = S[0]
    if len(S) == 1:
        return c0.copy(), 0.0
    U = S[1:] - c0
    G = U @ U.T
    rhs = 0.5 * (U * U).sum(axis=1)
    lam, *_ = np.linalg.lstsq(G, rhs, rcond=None)
    c = c0 + lam @ U
    r2 = float(((S - c) ** 2).sum(axis=1).max())
    return c, r2


def min_ball(points, order):
    """Welzl's move-to-front smallest enclosing ball.

    ``order`` is a permutation of the point indices; it fixes the otherwise
    random processing order so the result is deterministic. Returns
    ``(center, radius)``.
    """
    P = np.asarray(points, dtype=float)
    d = P.shape[1]
    idx = list(order)
    scale = float(np.abs(P).max()) if P.size else 0.0
    slack = 1e-24 + (1e-12 * scale) ** 2

    def mb(end, support):
        if support:
            c, r2 = _circumball(P[support])
        else:
            c, r2 = P[idx[0]].copy(), -1.0
        if len(support) == d + 1:
            return c, r2
        i = 0
        while i < end:
            k = idx[i]
            if ((P[k] - c) ** 2).sum() > r2 * (1 + 1e-12) + slack:
                c, r2 = mb(i, support + [k])
                idx.insert(0, idx.pop(i))
            i += 1
        return c, r2

    c, r2 = mb(len(idx), [])
    return c, math.sqrt(max(r2, 0.0))
