"""Corpus manifest: maps doc ids to CoNLL-U files, labels, ratings and
sidecar annotation files."""

from __future__ import annotations

import csv
import os
from dataclasses import dataclass

EXPECTED_HEADER = ["doc_id", "path", "class", "rating", "embeddings", "figurative"]


class ManifestError(ValueError):
    pass


@dataclass(frozen=True)
class ManifestEntry:
    doc_id: str
    path: str
    class_label: str | None
    human_rating: float | None
    embeddings_path: str | None
    figurative_path: str | None


def load_manifest(path: str) -> list[ManifestEntry]:
    """Read the manifest CSV. Paths are resolved relative to the manifest
    file; unreadable document paths are not checked here (deferred to
    extraction time)."""
    base = os.path.dirname(os.path.abspath(path))
    entries: list[ManifestEntry] = []
    seen: set[str] = set()
    with open(path, newline="", encoding="utf-8") as f:
        reader = csv.reader(f)
        try:
            header = next(reader)
        except StopIteration:
            raise ManifestError(f"{path}: empty manifest") from None
        header = [h.strip() for h in header]
        if header[:2] != EXPECTED_HEADER[:2] or any(
                h not in EXPECTED_HEADER for h in header):
            raise ManifestError(
                f"{path}: header must be {','.join(EXPECTED_HEADER)} "
                f"(trailing columns optional), got {','.join(header)}")
        col = {name: i for i, name in enumerate(header)}

        def cell(row: list[str], name: str) -> str:
            i = col.get(name)
            if i is None or i >= len(row):
                return ""
            return row[i].strip()

        for row_no, row in enumerate(reader, start=2):
            if not row or all(not c.strip() for c in row):
                continue
            doc_id = cell(row, "doc_id")
            doc_path = cell(row, "path")
            if not doc_id or not doc_path:
                raise ManifestError(f"{path}:{row_no}: doc_id and path are required")
            if doc_id in seen:
                raise ManifestError(f"{path}:{row_no}: duplicate doc_id {doc_id!r}")
            seen.add(doc_id)
            rating_text = cell(row, "rating")
            try:
                rating = float(rating_text) if rating_text else None
            except ValueError:
                raise ManifestError(
                    f"{path}:{row_no}: non-numeric rating {rating_text!r}") from None

            def resolve(p: str) -> str:
                return p if os.path.isabs(p) else os.path.join(base, p)

            entries.append(ManifestEntry(
                doc_id=doc_id,
                path=resolve(doc_path),
                class_label=cell(row, "class") or None,
                human_rating=rating,
                embeddings_path=resolve(cell(row, "embeddings")) if cell(row, "embeddings") else None,
                figurative_path=resolve(cell(row, "figurative")) if cell(row, "figurative") else None,
            ))
    if not entries:
        raise ManifestError(f"{path}: manifest has no rows")
    return entries
