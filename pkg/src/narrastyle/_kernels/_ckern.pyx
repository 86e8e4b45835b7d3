# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled kernels. Loop order and arithmetic mirror _pykern exactly;
compiled with contraction off so both backends stay bit-identical."""

from libc.math cimport sqrt, NAN

import numpy as np


def pearson_matrix(double[:, ::1] X):
    """Pairwise Pearson over rows of X (n, d), two-pass centered sums.

    Diagonal is exactly 1; pairs involving a constant row come back nan
    (the caller decides how to report them)."""
    cdef Py_ssize_t n = X.shape[0]
    cdef Py_ssize_t d = X.shape[1]
    cdef Py_ssize_t i, j, k
    cdef double s, mean, t, num, denom, r, v

    centered_arr = np.empty((n, d), dtype=np.float64)
    ss_arr = np.empty(n, dtype=np.float64)
    cdef double[:, ::1] centered = centered_arr
    cdef double[::1] ss = ss_arr

    for i in range(n):
        s = 0.0
        for j in range(d):
            s += X[i, j]
        mean = s / d
        for j in range(d):
            centered[i, j] = X[i, j] - mean
        t = 0.0
        for j in range(d):
            v = centered[i, j]
            t += v * v
        ss[i] = t

    M_arr = np.ones((n, n), dtype=np.float64)
    cdef double[:, ::1] M = M_arr
    for i in range(n):
        for j in range(i + 1, n):
            denom = ss[i] * ss[j]
            if denom == 0.0:
                r = NAN
            else:
                num = 0.0
                for k in range(d):
                    num += centered[i, k] * centered[j, k]
                r = num / sqrt(denom)
                if r > 1.0:
                    r = 1.0
                elif r < -1.0:
                    r = -1.0
            M[i, j] = r
            M[j, i] = r
    return M_arr


def rohde(double[:, :] M):
    """Elementwise: x <= 0 -> 0, x > 0 -> sqrt(x)."""
    cdef Py_ssize_t n = M.shape[0]
    cdef Py_ssize_t m = M.shape[1]
    cdef Py_ssize_t i, j
    cdef double v
    out_arr = np.empty((n, m), dtype=np.float64)
    cdef double[:, ::1] out = out_arr
    for i in range(n):
        for j in range(m):
            v = M[i, j]
            out[i, j] = 0.0 if v <= 0.0 else sqrt(v)
    return out_arr


def kendall_counts(double[::1] x, double[::1] y):
    """Concordant/discordant pair counts; ties in either variable skip
    the pair. Pure comparisons, no float arithmetic."""
    cdef Py_ssize_t n = x.shape[0]
    cdef Py_ssize_t i, j
    cdef long long conc = 0
    cdef long long disc = 0
    cdef double xi, yi
    for i in range(n):
        xi = x[i]
        yi = y[i]
        for j in range(i + 1, n):
            if x[j] > xi:
                if y[j] > yi:
                    conc += 1
                elif y[j] < yi:
                    disc += 1
            elif x[j] < xi:
                if y[j] < yi:
                    conc += 1
                elif y[j] > yi:
                    disc += 1
    return conc, disc


def louvain_sweep(double[:, ::1] A, double[::1] k, long long[::1] comm,
                  double[::1] tot, long long[::1] count, long long[::1] order,
                  double two_m, double gamma):
    """One Louvain level: local-move passes until a full pass moves nothing.

    comm/tot/count are updated in place. A move happens only when the best
    target beats staying by more than 1e-12; near-ties keep the smallest
    community id. Returns the number of moves performed."""
    cdef Py_ssize_t n = A.shape[0]
    cdef Py_ssize_t oi, i, j, c
    cdef long long cur, best_c, empty_c
    cdef double ki, w, best, sc
    cdef long long total = 0
    cdef bint improved = True

    neigh_arr = np.zeros(n, dtype=np.float64)
    cdef double[::1] neigh = neigh_arr

    while improved:
        improved = False
        for oi in range(n):
            i = order[oi]
            ki = k[i]
            cur = comm[i]
            for c in range(n):
                neigh[c] = 0.0
            for j in range(n):
                if j != i:
                    w = A[i, j]
                    if w != 0.0:
                        neigh[comm[j]] += w
            empty_c = -1
            for c in range(n):
                if count[c] == 0:
                    empty_c = c
                    break
            best = neigh[cur] - gamma * ki * (tot[cur] - ki) / two_m
            best_c = cur
            for c in range(n):
                if c == cur:
                    continue
                if count[c] > 0 and neigh[c] > 0.0:
                    sc = neigh[c] - gamma * ki * tot[c] / two_m
                elif c == empty_c:
                    sc = 0.0 - gamma * ki * 0.0 / two_m
                else:
                    continue
                if sc > best + 1e-12:
                    best = sc
                    best_c = c
            if best_c != cur:
                tot[cur] -= ki
                count[cur] -= 1
                tot[best_c] += ki
                count[best_c] += 1
                comm[i] = best_c
                total += 1
                improved = True
    return total
