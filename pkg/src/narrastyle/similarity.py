"""Pearson similarity matrices and the Rohde refinement."""

from __future__ import annotations

import math
from typing import Sequence

import numpy as np

from . import _kernels
from .vectors import FeatureVector


class SimilarityError(ValueError):
    pass


def pearson(a: Sequence[float], b: Sequence[float]) -> float:
    """Sample Pearson correlation of two equal-length sequences."""
    if len(a) != len(b):
        raise SimilarityError(f"length mismatch {len(a)} != {len(b)}")
    if len(a) < 2:
        raise SimilarityError("pearson needs at least 2 observations")
    X = np.array([list(a), list(b)], dtype=np.float64)
    r = float(_kernels.pearson_matrix(X)[0, 1])
    if math.isnan(r):
        raise SimilarityError("correlation undefined for constant input")
    return r


def build_similarity_matrix(vectors: Sequence[FeatureVector],
                            ) -> tuple[tuple[str, ...], np.ndarray]:
    """Square symmetric Pearson matrix over the vectors, unit diagonal."""
    if len(vectors) < 2:
        raise SimilarityError("similarity matrix needs at least 2 vectors")
    ids = vectors[0].feature_ids
    if len(ids) < 2:
        raise SimilarityError("effective dimension must be at least 2")
    for v in vectors:
        if v.feature_ids != ids:
            raise SimilarityError(
                f"{v.doc_id}: vectors disagree on the effective feature set")
        if v.missing:
            raise SimilarityError(f"{v.doc_id}: unnormalized vector with missing "
                                  f"values cannot enter the similarity matrix")
        if max(v.values) == min(v.values):
            raise SimilarityError(f"{v.doc_id}: constant vector, "
                                  f"correlation undefined")
    X = np.array([v.values for v in vectors], dtype=np.float64)
    doc_ids = tuple(v.doc_id for v in vectors)
    return doc_ids, _kernels.pearson_matrix(X)


def rohde_transform(M: np.ndarray) -> np.ndarray:
    """Zero out non-positive entries, square-root the positive ones."""
    if np.any(M > 1.0) or np.any(M < -1.0):
        raise SimilarityError("similarity entries must lie in [-1, 1]")
    return _kernels.rohde(np.ascontiguousarray(M, dtype=np.float64))


def write_similarity_csv(doc_ids: Sequence[str], M: np.ndarray, path) -> None:
    """Full symmetric matrix with doc_id row/column headers, 6 decimals."""
    lines = ["doc_id," + ",".join(doc_ids)]
    for i, doc_id in enumerate(doc_ids):
        lines.append(doc_id + "," + ",".join(f"{M[i, j]:.6f}"
                                             for j in range(len(doc_ids))))
    with open(path, "w", encoding="utf-8", newline="\n") as fh:
        fh.write("\n".join(lines) + "\n")
