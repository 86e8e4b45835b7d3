"""Semantic feature family, aggregated from sidecar annotation files.

The core never runs model inference. Sentence embeddings arrive as
``*.emb.jsonl`` (one ``{"doc_id", "sent_index", "embedding"}`` object per
line) and figurative-relation records as ``*.fig.jsonl``. This module
validates those files, averages adjacent-sentence cosines, and turns
figurative flags into the two textual figurative indices.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass, field
from pathlib import Path

from .model import Document

SEMANTIC_FEATURE_IDS = ("avg_semantic_overlap", "tfi_per_sent", "tfi_per_1000")

RELATION_TYPES = frozenset({"subj_verb", "subj_nom", "verb_obj", "passive_subj_verb"})

# candidate threshold on top-k masked-prediction similarity, control
# threshold on the neutral-context cosine
DEFAULT_THRESHOLDS = (0.40, 0.30)

_EMB_KEYS = frozenset({"doc_id", "sent_index", "embedding"})
_FIG_KEYS = frozenset({"doc_id", "sent_index", "relation_type", "target_token_index",
                       "topk_mean_similarity", "neutral_cosine", "figurative"})


class SemanticFileError(ValueError):
    def __init__(self, message: str, path: str | None = None, line_no: int | None = None):
        self.path = path
        self.line_no = line_no
        prefix = ""
        if path is not None:
            prefix = f"{path}: " if line_no is None else f"{path}:{line_no}: "
        super().__init__(prefix + message)


@dataclass(frozen=True)
class SentenceEmbedding:
    doc_id: str
    sent_index: int
    vector: tuple[float, ...]


@dataclass(frozen=True)
class FigurativeRecord:
    doc_id: str
    sent_index: int
    relation_type: str
    target_token_index: int
    topk_mean_similarity: float
    neutral_cosine: float | None
    figurative: bool


@dataclass
class SemanticProfile:
    values: dict[str, float] = field(default_factory=dict)
    missing: set[str] = field(default_factory=set)


def _is_real(x: object) -> bool:
    return isinstance(x, (int, float)) and not isinstance(x, bool) \
        and math.isfinite(float(x))


def _require(cond: bool, message: str, path: str | None, line_no: int | None):
    if not cond:
        raise SemanticFileError(message, path, line_no)


def _iter_jsonl(text: str, path: str | None):
    for line_no, line in enumerate(text.splitlines(), start=1):
        if not line.strip():
            continue
        try:
            obj = json.loads(line)
        except json.JSONDecodeError as exc:
            raise SemanticFileError(f"invalid JSON ({exc.msg})", path, line_no) from exc
        _require(isinstance(obj, dict), "record is not a JSON object", path, line_no)
        yield line_no, obj


def parse_embeddings(text: str, path: str | None = None) -> list[SentenceEmbedding]:
    records = []
    dim = None
    for line_no, obj in _iter_jsonl(text, path):
        _require(set(obj) == _EMB_KEYS,
                 f"embedding record keys must be exactly {sorted(_EMB_KEYS)}",
                 path, line_no)
        _require(isinstance(obj["doc_id"], str) and obj["doc_id"] != "",
                 "doc_id must be a non-empty string", path, line_no)
        _require(isinstance(obj["sent_index"], int) and not isinstance(obj["sent_index"], bool)
                 and obj["sent_index"] >= 0,
                 "sent_index must be a non-negative integer", path, line_no)
        vec = obj["embedding"]
        _require(isinstance(vec, list) and len(vec) > 0,
                 "embedding must be a non-empty array", path, line_no)
        _require(all(_is_real(x) for x in vec),
                 "embedding components must be finite numbers", path, line_no)
        if dim is None:
            dim = len(vec)
        _require(len(vec) == dim,
                 f"embedding dimension {len(vec)} != file dimension {dim}",
                 path, line_no)
        records.append(SentenceEmbedding(
            doc_id=obj["doc_id"],
            sent_index=obj["sent_index"],
            vector=tuple(float(x) for x in vec),
        ))
    return records


def parse_figurative(text: str, path: str | None = None) -> list[FigurativeRecord]:
    records = []
    for line_no, obj in _iter_jsonl(text, path):
        _require(set(obj) == _FIG_KEYS,
                 f"figurative record keys must be exactly {sorted(_FIG_KEYS)}",
                 path, line_no)
        _require(isinstance(obj["doc_id"], str) and obj["doc_id"] != "",
                 "doc_id must be a non-empty string", path, line_no)
        _require(isinstance(obj["sent_index"], int) and not isinstance(obj["sent_index"], bool)
                 and obj["sent_index"] >= 0,
                 "sent_index must be a non-negative integer", path, line_no)
        _require(obj["relation_type"] in RELATION_TYPES,
                 f"relation_type must be one of {sorted(RELATION_TYPES)}",
                 path, line_no)
        _require(isinstance(obj["target_token_index"], int)
                 and not isinstance(obj["target_token_index"], bool)
                 and obj["target_token_index"] >= 0,
                 "target_token_index must be a non-negative integer", path, line_no)
        _require(_is_real(obj["topk_mean_similarity"])
                 and -1.0 <= obj["topk_mean_similarity"] <= 1.0,
                 "topk_mean_similarity must be a number in [-1, 1]", path, line_no)
        neutral = obj["neutral_cosine"]
        _require(neutral is None or (_is_real(neutral) and -1.0 <= neutral <= 1.0),
                 "neutral_cosine must be null or a number in [-1, 1]", path, line_no)
        _require(isinstance(obj["figurative"], bool),
                 "figurative must be a boolean", path, line_no)
        records.append(FigurativeRecord(
            doc_id=obj["doc_id"],
            sent_index=obj["sent_index"],
            relation_type=obj["relation_type"],
            target_token_index=obj["target_token_index"],
            topk_mean_similarity=float(obj["topk_mean_similarity"]),
            neutral_cosine=None if neutral is None else float(neutral),
            figurative=obj["figurative"],
        ))
    return records


def read_embeddings(path: str | Path) -> list[SentenceEmbedding]:
    return parse_embeddings(Path(path).read_text(encoding="utf-8"), str(path))


def read_figurative(path: str | Path) -> list[FigurativeRecord]:
    return parse_figurative(Path(path).read_text(encoding="utf-8"), str(path))


def cosine(u: tuple[float, ...], v: tuple[float, ...]) -> float:
    if len(u) != len(v):
        raise SemanticFileError(f"dimension mismatch {len(u)} != {len(v)}")
    uu = math.fsum(x * x for x in u)
    vv = math.fsum(x * x for x in v)
    if uu == 0.0 or vv == 0.0:
        raise SemanticFileError("cosine undefined for a zero vector")
    uv = math.fsum(x * y for x, y in zip(u, v))
    return uv / math.sqrt(uu * vv)


def compute_semantic_overlap(doc: Document,
                             embeddings: list[SentenceEmbedding]) -> float | None:
    """Mean cosine between adjacent sentence vectors; None for a
    single-sentence document."""
    if doc.sentence_count < 2:
        return None
    by_index: dict[int, SentenceEmbedding] = {}
    for emb in embeddings:
        if emb.doc_id != doc.doc_id:
            continue
        if emb.sent_index in by_index:
            raise SemanticFileError(
                f"duplicate embedding for sentence {emb.sent_index} of {doc.doc_id}")
        by_index[emb.sent_index] = emb
    absent = [i for i in range(doc.sentence_count) if i not in by_index]
    if absent:
        raise SemanticFileError(
            f"missing embeddings for sentences {absent} of {doc.doc_id}")
    sims = [cosine(by_index[i].vector, by_index[i + 1].vector)
            for i in range(doc.sentence_count - 1)]
    return math.fsum(sims) / len(sims)


def aggregate_figurative(doc: Document,
                         records: list[FigurativeRecord]) -> tuple[float, float]:
    if doc.token_count == 0:
        raise SemanticFileError(f"document {doc.doc_id} has no tokens")
    flagged = sum(1 for r in records if r.doc_id == doc.doc_id and r.figurative)
    return (flagged / doc.sentence_count,
            1000.0 * flagged / doc.token_count)


def decide_figurative(topk_mean_similarity: float,
                      neutral_cosine: float | None,
                      thresholds: tuple[float, float] = DEFAULT_THRESHOLDS) -> bool:
    """Candidate when the masked-prediction similarity is low; a present
    neutral-context cosine must also be low to confirm."""
    tau_candidate, tau_control = thresholds
    if topk_mean_similarity >= tau_candidate:
        return False
    if neutral_cosine is None:
        return True
    return neutral_cosine < tau_control


def verify_figurative_records(records: list[FigurativeRecord],
                              thresholds: tuple[float, float] = DEFAULT_THRESHOLDS,
                              ) -> list[FigurativeRecord]:
    """Records whose stored flag disagrees with recomputation from scores."""
    return [r for r in records
            if r.figurative != decide_figurative(
                r.topk_mean_similarity, r.neutral_cosine, thresholds)]


def semantic_profile(doc: Document,
                     embeddings: list[SentenceEmbedding] | None,
                     records: list[FigurativeRecord] | None,
                     thresholds: tuple[float, float] = DEFAULT_THRESHOLDS,
                     ) -> SemanticProfile:
    """All 3 semantic feature ids; absent annotation files leave the
    corresponding features missing rather than zero."""
    profile = SemanticProfile()
    if embeddings is None:
        profile.missing.add("avg_semantic_overlap")
    else:
        overlap = compute_semantic_overlap(doc, embeddings)
        if overlap is None:
            profile.missing.add("avg_semantic_overlap")
        else:
            profile.values["avg_semantic_overlap"] = overlap
    if records is None:
        profile.missing.update(("tfi_per_sent", "tfi_per_1000"))
    else:
        mismatched = verify_figurative_records(records, thresholds)
        if mismatched:
            bad = sorted({(r.doc_id, r.sent_index) for r in mismatched})
            raise SemanticFileError(
                f"stored figurative flags disagree with recomputation at {bad}")
        per_sent, per_1000 = aggregate_figurative(doc, records)
        profile.values["tfi_per_sent"] = per_sent
        profile.values["tfi_per_1000"] = per_1000
    assert set(SEMANTIC_FEATURE_IDS) == set(profile.values) | profile.missing
    return profile
