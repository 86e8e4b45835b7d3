"""Loader for human story-quality ratings in the HANNA layout.

Each CSV row is one annotator's judgment of one story across six
dimensions (relevance, coherence, empathy, surprise, engagement,
complexity). The composite rating per story is the unweighted mean of
the six per-dimension means, each dimension first averaged over its
annotators.
"""

from __future__ import annotations

import csv
import math
from pathlib import Path

HANNA_DIMENSIONS = ("relevance", "coherence", "empathy", "surprise",
                    "engagement", "complexity")


class RatingsError(ValueError):
    pass


def load_hanna_ratings(path: str | Path,
                       id_column: str = "doc_id") -> dict[str, float]:
    path = Path(path)
    with open(path, encoding="utf-8", newline="") as fh:
        reader = csv.DictReader(fh)
        if reader.fieldnames is None:
            raise RatingsError(f"{path}: empty ratings file")
        lower = {name.lower().strip(): name for name in reader.fieldnames}
        if id_column.lower() not in lower:
            raise RatingsError(f"{path}: missing id column {id_column!r}; "
                               f"columns: {reader.fieldnames}")
        missing = [d for d in HANNA_DIMENSIONS if d not in lower]
        if missing:
            raise RatingsError(f"{path}: missing dimension columns {missing}")
        id_key = lower[id_column.lower()]
        # per (doc, dimension): running list of annotator values
        cells: dict[str, dict[str, list[float]]] = {}
        for line_no, row in enumerate(reader, start=2):
            doc_id = (row.get(id_key) or "").strip()
            if not doc_id:
                raise RatingsError(f"{path}:{line_no}: empty {id_column}")
            per_dim = cells.setdefault(
                doc_id, {d: [] for d in HANNA_DIMENSIONS})
            for dim in HANNA_DIMENSIONS:
                raw = (row.get(lower[dim]) or "").strip()
                if raw == "":
                    continue
                try:
                    value = float(raw)
                except ValueError as exc:
                    raise RatingsError(
                        f"{path}:{line_no}: bad {dim} value {raw!r}") from exc
                if not math.isfinite(value):
                    raise RatingsError(f"{path}:{line_no}: non-finite {dim}")
                per_dim[dim].append(value)
    if not cells:
        raise RatingsError(f"{path}: no rating rows")
    ratings: dict[str, float] = {}
    for doc_id, per_dim in cells.items():
        empty = [d for d in HANNA_DIMENSIONS if not per_dim[d]]
        if empty:
            raise RatingsError(f"{path}: {doc_id} has no values for {empty}")
        dim_means = [math.fsum(per_dim[d]) / len(per_dim[d])
                     for d in HANNA_DIMENSIONS]
        ratings[doc_id] = math.fsum(dim_means) / len(dim_means)
    return ratings
