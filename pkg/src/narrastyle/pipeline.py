"""Document-to-vector orchestration and artifact file formats.

Glues the three feature families together, and reads/writes the two
interchange artifacts the CLI passes between stages: the feature CSV
(`doc_id,<feature_id...>`, empty cell = missing) and the versioned
baseline profile JSON.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass
from pathlib import Path
from typing import Mapping, Sequence

from .conllu import parse_conllu_file
from .lexical import lexical_profile
from .manifest import ManifestEntry
from .model import Document
from .registry import FeatureRegistry, default_registry
from .resources import LexicalResources
from .semantic import (DEFAULT_THRESHOLDS, read_embeddings, read_figurative,
                       semantic_profile)
from .syntactic import syntactic_profile
from .vectors import (BaselineProfile, FeatureVector, WeightConfig,
                      VectorError, assemble_vector)

BASELINE_SCHEMA_VERSION = 1


class ArtifactError(ValueError):
    pass


def extract_document(doc: Document, res: LexicalResources,
                     registry: FeatureRegistry | None = None,
                     thresholds: tuple[float, float] = DEFAULT_THRESHOLDS,
                     embeddings=None, figurative=None) -> FeatureVector:
    """Raw (unnormalized) feature vector for one document."""
    registry = registry or default_registry()
    profiles = [
        lexical_profile(doc, res),
        syntactic_profile(doc),
        semantic_profile(doc, embeddings, figurative, thresholds),
    ]
    return assemble_vector(doc.doc_id, profiles, registry)


@dataclass
class ExtractionOutcome:
    vectors: list[FeatureVector]
    labels: dict[str, str]
    ratings: dict[str, float]
    failures: list[tuple[str, str]]   # (doc_id, message)


def extract_from_manifest(entries: Sequence[ManifestEntry], res: LexicalResources,
                          registry: FeatureRegistry | None = None,
                          thresholds: tuple[float, float] = DEFAULT_THRESHOLDS,
                          ) -> ExtractionOutcome:
    """Extract every manifest entry, collecting per-document failures
    instead of aborting the run."""
    registry = registry or default_registry()
    outcome = ExtractionOutcome([], {}, {}, [])
    for entry in entries:
        try:
            doc = parse_conllu_file(entry.path, doc_id=entry.doc_id)
            embeddings = (read_embeddings(entry.embeddings_path)
                          if entry.embeddings_path else None)
            figurative = (read_figurative(entry.figurative_path)
                          if entry.figurative_path else None)
            vec = extract_document(doc, res, registry, thresholds,
                                   embeddings, figurative)
        except (OSError, ValueError) as exc:
            outcome.failures.append((entry.doc_id, str(exc)))
            continue
        outcome.vectors.append(vec)
        if entry.class_label is not None:
            outcome.labels[entry.doc_id] = entry.class_label
        if entry.human_rating is not None:
            outcome.ratings[entry.doc_id] = entry.human_rating
    return outcome


def write_features_csv(vectors: Sequence[FeatureVector], path) -> None:
    """Feature matrix, one row per document; missing values stay empty."""
    if not vectors:
        raise ArtifactError("no vectors to write")
    ids = vectors[0].feature_ids
    lines = ["doc_id," + ",".join(ids)]
    for v in vectors:
        if v.feature_ids != ids:
            raise ArtifactError(f"{v.doc_id}: vectors disagree on feature set")
        cells = []
        for fid, value in zip(v.feature_ids, v.values):
            cells.append("" if fid in v.missing else f"{value:.6f}")
        lines.append(v.doc_id + "," + ",".join(cells))
    with open(path, "w", encoding="utf-8", newline="\n") as fh:
        fh.write("\n".join(lines) + "\n")


def read_features_csv(path, registry: FeatureRegistry | None = None,
                      ) -> list[FeatureVector]:
    registry = registry or default_registry()
    text = Path(path).read_text(encoding="utf-8")
    lines = [ln for ln in text.splitlines() if ln.strip()]
    if not lines:
        raise ArtifactError(f"{path}: empty feature csv")
    header = lines[0].split(",")
    if header[0] != "doc_id" or tuple(header[1:]) != registry.enabled_ids:
        raise ArtifactError(f"{path}: header does not match the feature registry")
    vectors = []
    seen = set()
    for line_no, line in enumerate(lines[1:], start=2):
        cells = line.split(",")
        if len(cells) != len(header):
            raise ArtifactError(f"{path}:{line_no}: expected {len(header)} cells, "
                                f"found {len(cells)}")
        doc_id = cells[0]
        if doc_id in seen:
            raise ArtifactError(f"{path}:{line_no}: duplicate doc_id {doc_id}")
        seen.add(doc_id)
        values = []
        missing = []
        for fid, cell in zip(registry.enabled_ids, cells[1:]):
            if cell == "":
                values.append(math.nan)
                missing.append(fid)
            else:
                values.append(float(cell))
        vectors.append(FeatureVector(doc_id=doc_id,
                                     feature_ids=registry.enabled_ids,
                                     values=tuple(values),
                                     missing=frozenset(missing)))
    return vectors


def _vector_to_json(v: FeatureVector) -> dict:
    return {"doc_id": v.doc_id, "values": list(v.values),
            "imputed": sorted(v.imputed)}


def _vector_from_json(obj: dict, feature_ids: tuple[str, ...]) -> FeatureVector:
    return FeatureVector(doc_id=obj["doc_id"], feature_ids=feature_ids,
                         values=tuple(float(x) for x in obj["values"]),
                         missing=frozenset(),
                         imputed=frozenset(obj.get("imputed", [])))


def save_baseline(profile: BaselineProfile, path) -> None:
    effective_unw = (profile.vectors_unweighted[0].feature_ids
                     if profile.vectors_unweighted else ())
    effective_w = (profile.vectors_weighted[0].feature_ids
                   if profile.vectors_weighted else ())
    data = {
        "schema_version": BASELINE_SCHEMA_VERSION,
        "feature_ids": list(profile.registry.enabled_ids),
        "means": {fid: profile.means[fid] for fid in sorted(profile.means)},
        "force_excluded": sorted(profile.force_excluded),
        "weights": {
            "coefficients": {k: profile.weight_config.coefficients[k]
                             for k in sorted(profile.weight_config.coefficients)},
            "excluded": sorted(profile.weight_config.excluded),
        },
        "class_maps": {s: dict(sorted(profile.class_maps[s].items()))
                       for s in sorted(profile.class_maps)},
        "effective_ids_unweighted": list(effective_unw),
        "effective_ids_weighted": list(effective_w),
        "vectors_unweighted": [_vector_to_json(v)
                               for v in profile.vectors_unweighted],
        "vectors_weighted": [_vector_to_json(v) for v in profile.vectors_weighted],
    }
    with open(path, "w", encoding="utf-8", newline="\n") as fh:
        json.dump(data, fh, indent=2, sort_keys=False)
        fh.write("\n")


def load_baseline(path) -> BaselineProfile:
    try:
        data = json.loads(Path(path).read_text(encoding="utf-8"))
    except json.JSONDecodeError as exc:
        raise ArtifactError(f"{path}: invalid JSON ({exc.msg})") from exc
    if not isinstance(data, dict) or data.get("schema_version") != BASELINE_SCHEMA_VERSION:
        raise ArtifactError(f"{path}: unsupported baseline schema")
    stored_ids = tuple(data["feature_ids"])
    base = default_registry()
    default_enabled = set(base.enabled_ids)
    stored_set = set(stored_ids)
    unknown = stored_set - set(base.all_ids)
    if unknown:
        raise ArtifactError(f"{path}: baseline names unknown features {sorted(unknown)}")
    registry = base.with_overrides(
        enable=sorted(stored_set - default_enabled),
        disable=sorted(default_enabled - stored_set))
    if registry.enabled_ids != stored_ids:
        raise ArtifactError(f"{path}: baseline feature order does not match "
                            f"the canonical registry order")
    try:
        weights = WeightConfig(
            coefficients={k: float(v)
                          for k, v in data["weights"]["coefficients"].items()},
            excluded=frozenset(data["weights"]["excluded"]))
    except (KeyError, ValueError) as exc:
        raise ArtifactError(f"{path}: bad weights block ({exc})") from exc
    unw_ids = tuple(data["effective_ids_unweighted"])
    w_ids = tuple(data["effective_ids_weighted"])
    try:
        profile = BaselineProfile(
            registry=registry,
            means={k: float(v) for k, v in data["means"].items()},
            force_excluded=frozenset(data["force_excluded"]),
            weight_config=weights,
            vectors_unweighted=tuple(_vector_from_json(o, unw_ids)
                                     for o in data["vectors_unweighted"]),
            vectors_weighted=tuple(_vector_from_json(o, w_ids)
                                   for o in data["vectors_weighted"]),
            class_maps={s: dict(m) for s, m in data["class_maps"].items()},
        )
    except (KeyError, TypeError, VectorError) as exc:
        raise ArtifactError(f"{path}: malformed baseline ({exc})") from exc
    return profile
