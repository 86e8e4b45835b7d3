"""Pure-Python reference kernels.

Mirrors _ckern operation for operation: every loop runs in the same order
with the same scalar double arithmetic, so the two backends produce
bit-identical results. Keep any change here in lockstep with _ckern.pyx.
"""

from __future__ import annotations

import math

import numpy as np


def pearson_matrix(X: np.ndarray) -> np.ndarray:
    """Pairwise Pearson over rows of X (n, d), two-pass centered sums.

    Diagonal is exactly 1; pairs involving a constant row come back nan
    (the caller decides how to report them)."""
    rows = X.tolist()
    n = len(rows)
    d = X.shape[1]
    centered = []
    ss = []
    for i in range(n):
        s = 0.0
        for v in rows[i]:
            s += v
        mean = s / d
        c = [v - mean for v in rows[i]]
        t = 0.0
        for v in c:
            t += v * v
        centered.append(c)
        ss.append(t)
    M = np.ones((n, n), dtype=np.float64)
    for i in range(n):
        ci = centered[i]
        for j in range(i + 1, n):
            denom = ss[i] * ss[j]
            if denom == 0.0:
                r = math.nan
            else:
                cj = centered[j]
                num = 0.0
                for k in range(d):
                    num += ci[k] * cj[k]
                r = num / math.sqrt(denom)
                if r > 1.0:
                    r = 1.0
                elif r < -1.0:
                    r = -1.0
            M[i, j] = r
            M[j, i] = r
    return M


def rohde(M: np.ndarray) -> np.ndarray:
    """Elementwise: x <= 0 -> 0, x > 0 -> sqrt(x)."""
    rows = M.tolist()
    out = np.empty_like(M)
    for i in range(len(rows)):
        row = rows[i]
        for j in range(len(row)):
            v = row[j]
            out[i, j] = 0.0 if v <= 0.0 else math.sqrt(v)
    return out


def kendall_counts(x: np.ndarray, y: np.ndarray) -> tuple[int, int]:
    """Concordant/discordant pair counts; ties in either variable skip
    the pair. Pure comparisons, no float arithmetic."""
    xs = x.tolist()
    ys = y.tolist()
    n = len(xs)
    conc = 0
    disc = 0
    for i in range(n):
        xi = xs[i]
        yi = ys[i]
        for j in range(i + 1, n):
            if xs[j] > xi:
                if ys[j] > yi:
                    conc += 1
                elif ys[j] < yi:
                    disc += 1
            elif xs[j] < xi:
                if ys[j] < yi:
                    conc += 1
                elif ys[j] > yi:
                    disc += 1
    return conc, disc


def louvain_sweep(A: np.ndarray, k: np.ndarray, comm: np.ndarray,
                  tot: np.ndarray, count: np.ndarray, order: np.ndarray,
                  two_m: float, gamma: float) -> int:
    """One Louvain level: local-move passes until a full pass moves nothing.

    comm/tot/count are updated in place. A move happens only when the best
    target beats staying by more than 1e-12; near-ties keep the smallest
    community id. Returns the number of moves performed."""
    rows = A.tolist()
    kk = k.tolist()
    cm = comm.tolist()
    tt = tot.tolist()
    ct = count.tolist()
    ordr = order.tolist()
    n = len(rows)
    neigh = [0.0] * n
    total = 0
    improved = True
    while improved:
        improved = False
        for i in ordr:
            ki = kk[i]
            cur = cm[i]
            row = rows[i]
            for c in range(n):
                neigh[c] = 0.0
            for j in range(n):
                if j != i:
                    w = row[j]
                    if w != 0.0:
                        neigh[cm[j]] += w
            empty_c = -1
            for c in range(n):
                if ct[c] == 0:
                    empty_c = c
                    break
            best = neigh[cur] - gamma * ki * (tt[cur] - ki) / two_m
            best_c = cur
            for c in range(n):
                if c == cur:
                    continue
                if ct[c] > 0 and neigh[c] > 0.0:
                    sc = neigh[c] - gamma * ki * tt[c] / two_m
                elif c == empty_c:
                    sc = 0.0 - gamma * ki * 0.0 / two_m
                else:
                    continue
                if sc > best + 1e-12:
                    best = sc
                    best_c = c
            if best_c != cur:
                tt[cur] -= ki
                ct[cur] -= 1
                tt[best_c] += ki
                ct[best_c] += 1
                cm[i] = best_c
                total += 1
                improved = True
    for i in range(n):
        comm[i] = cm[i]
        tot[i] = tt[i]
        count[i] = ct[i]
    return total
