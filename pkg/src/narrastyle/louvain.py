"""Louvain community detection on weighted graphs.

Greedy two-phase optimization of weighted modularity with a resolution
parameter. Each restart runs local-move sweeps plus aggregation until Q
stabilizes, then refinement rounds restart the two-phase loop from the
partition found so single nodes can leave their aggregated communities.
The best partition across restarts wins; all visit orders come from one
seeded rng, so the same graph and seed always give the same partition.
Community ids are renumbered by descending size (ties by first member)
for stable reports.
"""

from __future__ import annotations

import random
from typing import Mapping

import numpy as np

from . import _kernels
from .graph import GraphError, WeightedGraph

_Q_EPS = 1e-9


def _row_sums(A: np.ndarray) -> np.ndarray:
    n = A.shape[0]
    k = np.zeros(n, dtype=np.float64)
    rows = A.tolist()
    for i in range(n):
        s = 0.0
        for v in rows[i]:
            s += v
        k[i] = s
    return k


def _modularity_dense(A: np.ndarray, comm: list[int], two_m: float,
                      gamma: float) -> float:
    """Q = sum_c [S_in(c)/2m - gamma (S_tot(c)/2m)^2] on a dense adjacency."""
    n = A.shape[0]
    rows = A.tolist()
    nc = max(comm) + 1
    s_in = [0.0] * nc
    s_tot = [0.0] * nc
    for i in range(n):
        row = rows[i]
        ci = comm[i]
        ki = 0.0
        for j in range(n):
            v = row[j]
            ki += v
            if comm[j] == ci:
                s_in[ci] += v
        s_tot[ci] += ki
    q = 0.0
    for c in range(nc):
        q += s_in[c] / two_m - gamma * (s_tot[c] / two_m) ** 2
    return q


def modularity(g: WeightedGraph, partition: Mapping[str, int],
               resolution: float = 1.0) -> float:
    unassigned = [v for v in g.nodes if v not in partition]
    if unassigned:
        raise GraphError(f"partition misses nodes: {unassigned}")
    A = g.adjacency()
    two_m = float(2.0 * g.total_weight())
    if two_m == 0.0:
        raise GraphError("modularity undefined on a graph with no edges")
    labels = sorted(set(partition[v] for v in g.nodes))
    dense = {lab: i for i, lab in enumerate(labels)}
    comm = [dense[partition[v]] for v in g.nodes]
    return _modularity_dense(A, comm, two_m, gamma=resolution)


def _two_phase(A0: np.ndarray, two_m: float, gamma: float,
               rng: random.Random, init: list[int] | None) -> list[int]:
    """One multi-level run; level 0 starts from `init` communities when
    given, otherwise from singletons. Returns per-node assignment."""
    n0 = A0.shape[0]
    if init is None:
        assignment = list(range(n0))
    else:
        labels = sorted(set(init))
        dense = {lab: i for i, lab in enumerate(labels)}
        assignment = [dense[c] for c in init]
    A = A0
    first = True
    q_prev = _modularity_dense(A0, assignment, two_m, gamma)

    while True:
        n_level = A.shape[0]
        order = list(range(n_level))
        rng.shuffle(order)
        k = _row_sums(A)
        if first and init is not None:
            comm = np.asarray(assignment, dtype=np.int64)
            tot = np.zeros(n_level, dtype=np.float64)
            count = np.zeros(n_level, dtype=np.int64)
            for i in range(n_level):
                tot[assignment[i]] += k[i]
                count[assignment[i]] += 1
        else:
            comm = np.arange(n_level, dtype=np.int64)
            tot = k.copy()
            count = np.ones(n_level, dtype=np.int64)
        moves = _kernels.louvain_sweep(
            np.ascontiguousarray(A), k, comm, tot, count,
            np.asarray(order, dtype=np.int64), two_m, gamma)
        level_comm = [int(c) for c in comm]
        if first and init is not None:
            assignment = level_comm
        else:
            assignment = [level_comm[c] for c in assignment]
        first = False
        q_new = _modularity_dense(A0, assignment, two_m, gamma)
        if moves == 0 or q_new - q_prev < _Q_EPS:
            break
        q_prev = q_new
        # aggregate communities into super-nodes
        labels = sorted(set(assignment))
        dense = {lab: idx for idx, lab in enumerate(labels)}
        assignment = [dense[c] for c in assignment]
        n_next = len(labels)
        if n_next == n_level:
            break
        A_next = np.zeros((n_next, n_next), dtype=np.float64)
        rows = A0.tolist()
        for i in range(n0):
            row = rows[i]
            ci = assignment[i]
            for j in range(n0):
                v = row[j]
                if v != 0.0:
                    A_next[ci, assignment[j]] += v
        A = A_next
    return assignment


def louvain(g: WeightedGraph, resolution: float = 1.0, seed: int = 0,
            restarts: int = 8) -> tuple[dict[str, int], float]:
    """Partition of g's nodes and its modularity."""
    if g.total_weight() == 0.0:
        raise GraphError("louvain needs at least one edge")
    if restarts < 1:
        raise GraphError("restarts must be >= 1")
    A0 = g.adjacency()
    two_m = float(2.0 * g.total_weight())
    gamma = float(resolution)
    rng = random.Random(seed)

    best_assign: list[int] | None = None
    best_q = float("-inf")
    for _ in range(restarts):
        assignment = _two_phase(A0, two_m, gamma, rng, init=None)
        q = _modularity_dense(A0, assignment, two_m, gamma)
        while True:
            refined = _two_phase(A0, two_m, gamma, rng, init=assignment)
            q_ref = _modularity_dense(A0, refined, two_m, gamma)
            if q_ref > q:
                assignment = refined
            if q_ref - q < _Q_EPS:
                break
            q = q_ref
        q = _modularity_dense(A0, assignment, two_m, gamma)
        if q > best_q + 1e-15:
            best_assign = assignment
            best_q = q
    assert best_assign is not None

    # renumber by (-size, first member) for stable reporting
    members: dict[int, list[int]] = {}
    for idx, c in enumerate(best_assign):
        members.setdefault(c, []).append(idx)
    ordered = sorted(members, key=lambda c: (-len(members[c]), members[c][0]))
    relabel = {c: i for i, c in enumerate(ordered)}
    partition = {g.nodes[idx]: relabel[c] for idx, c in enumerate(best_assign)}
    q_final = _modularity_dense(A0, [relabel[c] for c in best_assign],
                                two_m, gamma)
    return partition, q_final
