# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled hot kernels. Mirrors ``_kernels_py`` exactly."""

import numpy as np
cimport numpy as cnp
from libc.math cimport sqrt, atan2, fabs, INFINITY, NAN
from libc.stdlib cimport malloc, free

cnp.import_array()

BACKEND = "cython"


def frechet_dp(const double[:, ::1] P, const double[:, ::1] Q):
    cdef Py_ssize_t p = P.shape[0], q = Q.shape[0], d = P.shape[1]
    cdef Py_ssize_t i, j, k
    cdef double[::1] prev = np.empty(q)
    cdef double[::1] row = np.empty(q)
    cdef double[::1] tmp
    cdef double s, x, m
    for i in range(p):
        for j in range(q):
            s = 0.0
            for k in range(d):
                x = P[i, k] - Q[j, k]
                s += x * x
            s = sqrt(s)
            if i == 0 and j == 0:
                row[j] = s
            elif i == 0:
                row[j] = s if s > row[j - 1] else row[j - 1]
            elif j == 0:
                row[j] = s if s > prev[j] else prev[j]
            else:
                m = prev[j]
                if row[j - 1] < m:
                    m = row[j - 1]
                if prev[j - 1] < m:
                    m = prev[j - 1]
                row[j] = m if m > s else s
        tmp = prev
        prev = row
        row = tmp
    return prev[q - 1]


def distortion_grid(const double[:, ::1] V, bint closed, int grid):
    cdef Py_ssize_t n = V.shape[0], d = V.shape[1]
    cdef Py_ssize_t E = n if closed else n - 1
    cdef Py_ssize_t i, j, a, b, k, e
    cdef double[:, ::1] A = np.empty((E, d))
    cdef double[:, ::1] D = np.empty((E, d))
    cdef double[::1] el = np.empty(E)
    cdef double[::1] cum = np.empty(E + 1)
    cdef double[::1] t = np.linspace(0.0, 1.0, grid)
    cdef double s, x, L, tiny, ln, dist, r, bestv, sp, sq
    cdef double bu_, bw_
    cdef bint coincident = False
    best_np = np.full((E, E), -np.inf)
    bu_np = np.zeros((E, E))
    bw_np = np.zeros((E, E))
    cdef double[:, ::1] best = best_np
    cdef double[:, ::1] bu = bu_np
    cdef double[:, ::1] bw = bw_np
    # lattice points: (E, grid, d)
    cdef double[:, :, ::1] P = np.empty((E, grid, d))
    cdef double[:, ::1] S = np.empty((E, grid))

    cum[0] = 0.0
    for e in range(E):
        s = 0.0
        for k in range(d):
            A[e, k] = V[e, k]
            D[e, k] = V[(e + 1) % n, k] - V[e, k]
            s += D[e, k] * D[e, k]
        el[e] = sqrt(s)
        cum[e + 1] = cum[e] + el[e]
    L = cum[E]
    tiny = 1e-12 * L
    for e in range(E):
        for a in range(grid):
            for k in range(d):
                P[e, a, k] = A[e, k] + t[a] * D[e, k]
            S[e, a] = cum[e] + t[a] * el[e]

    for i in range(E - 1):
        for j in range(i + 1, E):
            bestv = -INFINITY
            bu_ = 0.0
            bw_ = 0.0
            for a in range(grid):
                sp = S[i, a]
                for b in range(grid):
                    s = 0.0
                    for k in range(d):
                        x = P[i, a, k] - P[j, b, k]
                        s += x * x
                    dist = sqrt(s)
                    ln = fabs(sp - S[j, b])
                    if closed and L - ln < ln:
                        ln = L - ln
                    if dist <= tiny:
                        if ln > 1e3 * tiny:
                            coincident = True
                        continue
                    r = ln / dist
                    if r > bestv:
                        bestv = r
                        bu_ = t[a]
                        bw_ = t[b]
            best[i, j] = bestv
            bu[i, j] = bu_
            bw[i, j] = bw_
    return best_np, bu_np, bw_np, bool(coincident)


cdef long _count_row(const double[:] h, bint closed, double tol, double* runs):
    cdef Py_ssize_t n = h.shape[0], i, k
    cdef long R = 1, cnt = 0
    cdef double a, b, c
    runs[0] = h[0]
    for i in range(1, n):
        if fabs(h[i] - h[i - 1]) > tol:
            runs[R] = h[i]
            R += 1
    if closed and R > 1 and fabs(h[n - 1] - h[0]) <= tol:
        R -= 1
    if R == 1:
        return -1
    if closed:
        for k in range(R):
            a = runs[(k + R - 1) % R]
            b = runs[k]
            c = runs[(k + 1) % R]
            if b > a and b > c:
                cnt += 1
    else:
        for k in range(1, R - 1):
            a = runs[k - 1]
            b = runs[k]
            c = runs[k + 1]
            if (b > a and b > c) or (b < a and b < c):
                cnt += 1
    return cnt


def count_extrema_batch(const double[:, :] H, bint closed, double tol):
    cdef Py_ssize_t m = H.shape[0], n = H.shape[1], r
    out_np = np.empty(m, dtype=np.int64)
    cdef long long[::1] out = out_np
    cdef double* runs = <double*> malloc(n * sizeof(double))
    try:
        for r in range(m):
            out[r] = _count_row(H[r], closed, tol, runs)
    finally:
        free(runs)
    return out_np


cdef inline double _turn(double* a, double* b, Py_ssize_t k):
    cdef double s1 = 0.0, s2 = 0.0, x, y
    cdef Py_ssize_t c
    for c in range(k):
        x = a[c] - b[c]
        y = a[c] + b[c]
        s1 += x * x
        s2 += y * y
    return 2.0 * atan2(sqrt(s1), sqrt(s2))


def tc_batch(const double[:, :, :] X, bint closed):
    cdef Py_ssize_t m = X.shape[0], n = X.shape[1], k = X.shape[2]
    cdef Py_ssize_t r, i, c, nk, e, ne
    cdef bint same
    cdef double s, total
    out_np = np.empty(m)
    cdef double[::1] out = out_np
    cdef double* Y = <double*> malloc(n * k * sizeof(double))
    cdef double* U = <double*> malloc(n * k * sizeof(double))
    try:
        for r in range(m):
            # collapse consecutive duplicates
            nk = 0
            for i in range(n):
                same = nk > 0
                if same:
                    for c in range(k):
                        if X[r, i, c] != Y[(nk - 1) * k + c]:
                            same = False
                            break
                if not same:
                    for c in range(k):
                        Y[nk * k + c] = X[r, i, c]
                    nk += 1
            if closed:
                while nk > 1:
                    same = True
                    for c in range(k):
                        if Y[(nk - 1) * k + c] != Y[c]:
                            same = False
                            break
                    if not same:
                        break
                    nk -= 1
            if nk < 2:
                out[r] = NAN
                continue
            ne = nk if closed else nk - 1
            for e in range(ne):
                s = 0.0
                for c in range(k):
                    U[e * k + c] = Y[((e + 1) % nk) * k + c] - Y[e * k + c]
                    s += U[e * k + c] * U[e * k + c]
                s = sqrt(s)
                for c in range(k):
                    U[e * k + c] /= s
            total = 0.0
            if closed:
                for e in range(ne):
                    total += _turn(&U[((e + ne - 1) % ne) * k], &U[e * k], k)
            else:
                for e in range(1, ne):
                    total += _turn(&U[(e - 1) * k], &U[e * k], k)
            out[r] = total
    finally:
        free(Y)
        free(U)
    return out_np


cdef struct _Ball:
    double* P
    int n
    int d
    int* idx
    int* sup
    double* cbuf    # (d + 2) * d centres, one per recursion depth
    double* r2buf
    double* G
    double* rhs
    double* U
    double slack


cdef void _circumball(_Ball* B, int ns, double* c, double* r2):
    cdef int d = B.d, m = ns - 1, i, j, k, piv
    cdef double* p0 = B.P + B.sup[0] * d
    cdef double s, x, best, tmp, maxdiag
    if ns == 0:
        r2[0] = -1.0
        return
    for k in range(d):
        c[k] = p0[k]
    if ns == 1:
        r2[0] = 0.0
        return
    for i in range(m):
        for k in range(d):
            B.U[i * d + k] = B.P[B.sup[i + 1] * d + k] - p0[k]
    maxdiag = 0.0
    for i in range(m):
        for j in range(m):
            s = 0.0
            for k in range(d):
                s += B.U[i * d + k] * B.U[j * d + k]
            B.G[i * m + j] = s
        B.rhs[i] = 0.5 * B.G[i * m + i]
        if B.G[i * m + i] > maxdiag:
            maxdiag = B.G[i * m + i]
    # Gaussian elimination with partial pivoting; near-zero pivots drop that direction
    for i in range(m):
        piv = i
        best = fabs(B.G[i * m + i])
        for j in range(i + 1, m):
            if fabs(B.G[j * m + i]) > best:
                best = fabs(B.G[j * m + i])
                piv = j
        if best <= 1e-13 * maxdiag:
            for j in range(m):
                B.G[i * m + j] = 0.0
            B.G[i * m + i] = 1.0
            B.rhs[i] = 0.0
            for j in range(i + 1, m):
                B.G[j * m + i] = 0.0
            continue
        if piv != i:
            for j in range(m):
                tmp = B.G[i * m + j]
                B.G[i * m + j] = B.G[piv * m + j]
                B.G[piv * m + j] = tmp
            tmp = B.rhs[i]
            B.rhs[i] = B.rhs[piv]
            B.rhs[piv] = tmp
        for j in range(i + 1, m):
            x = B.G[j * m + i] / B.G[i * m + i]
            if x != 0.0:
                for k in range(i, m):
                    B.G[j * m + k] -= x * B.G[i * m + k]
                B.rhs[j] -= x * B.rhs[i]
    for i in range(m - 1, -1, -1):
        s = B.rhs[i]
        for j in range(i + 1, m):
            s -= B.G[i * m + j] * B.rhs[j]
        B.rhs[i] = s / B.G[i * m + i]
    for i in range(m):
        for k in range(d):
            c[k] += B.rhs[i] * B.U[i * d + k]
    r2[0] = 0.0
    for i in range(ns):
        s = 0.0
        for k in range(d):
            x = B.P[B.sup[i] * d + k] - c[k]
            s += x * x
        if s > r2[0]:
            r2[0] = s
    return


cdef void _mtf(_Ball* B, int end, int ns):
    cdef int d = B.d, i, k, j, t
    cdef double* c = B.cbuf + ns * d
    cdef double* r2 = B.r2buf + ns
    cdef double s, x
    if ns == 0:
        for k in range(d):
            c[k] = B.P[B.idx[0] * d + k]
        r2[0] = -1.0
    else:
        _circumball(B, ns, c, r2)
    if ns == d + 1:
        return
    i = 0
    while i < end:
        t = B.idx[i]
        s = 0.0
        for k in range(d):
            x = B.P[t * d + k] - c[k]
            s += x * x
        if s > r2[0] * (1.0 + 1e-12) + B.slack:
            B.sup[ns] = t
            _mtf(B, i, ns + 1)
            for k in range(d):
                c[k] = B.cbuf[(ns + 1) * d + k]
            r2[0] = B.r2buf[ns + 1]
            for j in range(i, 0, -1):
                B.idx[j] = B.idx[j - 1]
            B.idx[0] = t
        i += 1


def min_ball(points, order):
    cdef const double[:, ::1] P = np.ascontiguousarray(points, dtype=np.float64)
    cdef int n = P.shape[0], d = P.shape[1], i
    cdef const long long[::1] o = np.ascontiguousarray(order, dtype=np.int64)
    cdef _Ball B
    cdef double scale = float(np.abs(np.asarray(P)).max()) if n else 0.0
    B.P = <double*> &P[0, 0]
    B.n = n
    B.d = d
    B.slack = 1e-24 + (1e-12 * scale) ** 2
    B.idx = <int*> malloc(n * sizeof(int))
    B.sup = <int*> malloc((d + 2) * sizeof(int))
    B.cbuf = <double*> malloc((d + 2) * d * sizeof(double))
    B.r2buf = <double*> malloc((d + 2) * sizeof(double))
    B.G = <double*> malloc((d + 1) * (d + 1) * sizeof(double))
    B.rhs = <double*> malloc((d + 1) * sizeof(double))
    B.U = <double*> malloc((d + 1) * d * sizeof(double))
    try:
        for i in range(n):
            B.idx[i] = <int> o[i]
        _mtf(&B, n, 0)
        center = np.array([B.cbuf[i] for i in range(d)])
        r2 = B.r2buf[0]
    finally:
        free(B.idx); free(B.sup); free(B.cbuf); free(B.r2buf)
        free(B.G); free(B.rhs); free(B.U)
    return center, sqrt(r2 if r2 > 0 else 0.0)
