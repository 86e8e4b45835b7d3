"""Rank and linear correlation of system scores against human ratings."""

from __future__ import annotations

import math
import warnings
from collections import Counter
from dataclasses import dataclass
from itertools import permutations
from typing import Mapping, Sequence

import numpy as np
from scipy import stats

from . import _kernels
from .dpi import DpiScore

# below this n the Kendall null distribution is enumerated exactly
_EXACT_N = 10


class CorrelationError(ValueError):
    pass


@dataclass(frozen=True)
class RatedPair:
    doc_id: str
    system_score: float
    human_rating: float


@dataclass(frozen=True)
class CorrelationReport:
    n: int
    pearson_r: float
    pearson_p: float
    kendall_tau: float
    kendall_p: float


def _as_array(x: Sequence[float], name: str) -> np.ndarray:
    arr = np.ascontiguousarray(x, dtype=np.float64)
    if arr.ndim != 1:
        raise CorrelationError(f"{name} must be one-dimensional")
    return arr


def _tie_sizes(values: np.ndarray) -> list[int]:
    return [t for t in Counter(values.tolist()).values() if t > 1]


def kendall_tau_b(x: Sequence[float], y: Sequence[float]) -> float:
    """Tau-b: (C - D) / sqrt((n0 - n1)(n0 - n2)) with tie corrections."""
    xa, ya = _as_array(x, "x"), _as_array(y, "y")
    n = len(xa)
    if len(ya) != n:
        raise CorrelationError(f"length mismatch {n} != {len(ya)}")
    if n < 2:
        raise CorrelationError("kendall needs at least 2 observations")
    conc, disc = _kernels.kendall_counts(xa, ya)
    n0 = n * (n - 1) // 2
    n1 = sum(t * (t - 1) // 2 for t in _tie_sizes(xa))
    n2 = sum(t * (t - 1) // 2 for t in _tie_sizes(ya))
    if n0 == n1 or n0 == n2:
        raise CorrelationError("kendall undefined when one variable is all ties")
    return (conc - disc) / math.sqrt((n0 - n1) * (n0 - n2))


def pearson_with_p(x: Sequence[float], y: Sequence[float]) -> tuple[float, float]:
    """Pearson r with the two-sided Student-t p-value on n-2 dof."""
    xa, ya = _as_array(x, "x"), _as_array(y, "y")
    n = len(xa)
    if len(ya) != n:
        raise CorrelationError(f"length mismatch {n} != {len(ya)}")
    if n < 3:
        raise CorrelationError("pearson p-value needs at least 3 observations")
    if np.all(xa == xa[0]) or np.all(ya == ya[0]):
        raise CorrelationError("pearson undefined for constant input")
    r = float(_kernels.pearson_matrix(np.array([xa, ya]))[0, 1])
    if abs(r) == 1.0:
        return r, 0.0
    t = r * math.sqrt((n - 2) / (1.0 - r * r))
    p = 2.0 * float(stats.t.sf(abs(t), n - 2))
    return r, min(p, 1.0)


def _exact_kendall_p(xa: np.ndarray, ya: np.ndarray, tau_obs: float) -> float:
    """Two-sided permutation p: share of y-permutations with |tau| at
    least |tau_obs| (within 1e-12).

    The tie structure of both variables is fixed under permutation, so the
    tau-b denominator is constant and the test reduces to a threshold on
    |C - D|."""
    xs = xa.tolist()
    ys = ya.tolist()
    n = len(xs)
    n0 = n * (n - 1) // 2
    n1 = sum(t * (t - 1) // 2 for t in _tie_sizes(xa))
    n2 = sum(t * (t - 1) // 2 for t in _tie_sizes(ya))
    denom = math.sqrt((n0 - n1) * (n0 - n2))
    threshold = (abs(tau_obs) - 1e-12) * denom
    hits = 0
    total = 0
    for perm in permutations(ys):
        s = 0
        for i in range(n):
            xi = xs[i]
            yi = perm[i]
            for j in range(i + 1, n):
                if xs[j] > xi:
                    if perm[j] > yi:
                        s += 1
                    elif perm[j] < yi:
                        s -= 1
                elif xs[j] < xi:
                    if perm[j] < yi:
                        s += 1
                    elif perm[j] > yi:
                        s -= 1
        total += 1
        if abs(s) >= threshold:
            hits += 1
    return hits / total


def kendall_p(x: Sequence[float], y: Sequence[float],
              method: str = "auto") -> float:
    """Two-sided p for tau-b: exact enumeration for n < 10, otherwise the
    normal approximation with tie-adjusted variance."""
    xa, ya = _as_array(x, "x"), _as_array(y, "y")
    n = len(xa)
    tau = kendall_tau_b(xa, ya)
    if method == "auto":
        method = "exact" if n < _EXACT_N else "normal"
    if method == "exact":
        return _exact_kendall_p(xa, ya, tau)
    if method != "normal":
        raise CorrelationError(f"unknown method {method!r}")
    conc, disc = _kernels.kendall_counts(xa, ya)
    ties_x = _tie_sizes(xa)
    ties_y = _tie_sizes(ya)
    v0 = n * (n - 1) * (2 * n + 5)
    vt = sum(t * (t - 1) * (2 * t + 5) for t in ties_x)
    vu = sum(u * (u - 1) * (2 * u + 5) for u in ties_y)
    sum_t2 = sum(t * (t - 1) for t in ties_x)
    sum_u2 = sum(u * (u - 1) for u in ties_y)
    sum_t3 = sum(t * (t - 1) * (t - 2) for t in ties_x)
    sum_u3 = sum(u * (u - 1) * (u - 2) for u in ties_y)
    var_s = (v0 - vt - vu) / 18.0 \
        + sum_t2 * sum_u2 / (2.0 * n * (n - 1)) \
        + sum_t3 * sum_u3 / (9.0 * n * (n - 1) * (n - 2))
    if var_s <= 0.0:
        return 1.0
    z = (conc - disc) / math.sqrt(var_s)
    return math.erfc(abs(z) / math.sqrt(2.0))


def kendall_with_p(x: Sequence[float], y: Sequence[float],
                   method: str = "auto") -> tuple[float, float]:
    return kendall_tau_b(x, y), kendall_p(x, y, method)


def evaluate(scores: Sequence[DpiScore] | Mapping[str, float],
             ratings: Mapping[str, float]) -> CorrelationReport:
    """Inner-join scores with ratings on doc_id and correlate."""
    if isinstance(scores, Mapping):
        items = list(scores.items())
    else:
        items = [(s.doc_id, s.score) for s in scores]
    if len({doc_id for doc_id, _ in items}) != len(items):
        raise CorrelationError("duplicate doc_id among scores")
    pairs = [RatedPair(doc_id, value, float(ratings[doc_id]))
             for doc_id, value in items if doc_id in ratings]
    unrated = [doc_id for doc_id, _ in items if doc_id not in ratings]
    if unrated:
        warnings.warn(f"{len(unrated)} scored documents have no rating: "
                      f"{unrated[:5]}{'...' if len(unrated) > 5 else ''}")
    if len(pairs) < 3:
        raise CorrelationError(
            f"need at least 3 rated documents, found {len(pairs)}")
    sys_scores = [p.system_score for p in pairs]
    human = [p.human_rating for p in pairs]
    r, rp = pearson_with_p(sys_scores, human)
    tau, tp = kendall_with_p(sys_scores, human)
    return CorrelationReport(n=len(pairs), pearson_r=r, pearson_p=rp,
                             kendall_tau=tau, kendall_p=tp)


def write_report_csv(rows: Sequence[tuple[str, str, CorrelationReport]], path) -> None:
    """One row per (strategy, formula):
    `strategy,formula,pearson,pearson_p,kendall,kendall_p,n`."""
    lines = ["strategy,formula,pearson,pearson_p,kendall,kendall_p,n"]
    for strategy, formula, rep in rows:
        lines.append(f"{strategy},{formula},{rep.pearson_r:.6f},{rep.pearson_p:.6f},"
                     f"{rep.kendall_tau:.6f},{rep.kendall_p:.6f},{rep.n}")
    with open(path, "w", encoding="utf-8", newline="\n") as fh:
        fh.write("\n".join(lines) + "\n")
