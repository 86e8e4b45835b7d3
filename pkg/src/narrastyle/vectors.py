"""Feature vector assembly, baseline profiles and mean-scaling normalization.

Normalization maps a raw value to raw / (mean * c) * 100, where the mean
comes from a baseline corpus and c is a per-feature attenuation
coefficient. Excluded features drop out of the vector's effective
dimension entirely; missing raw values impute the baseline-mean
equivalent 100 / c and carry an imputed flag.
"""

from __future__ import annotations

import math
import warnings
from dataclasses import dataclass, field
from typing import Iterable, Mapping, Protocol

from .registry import FeatureRegistry, default_registry

ORIGINAL_CLASSES = ("Aw", "HQ", "SQ", "SP")
MERGED_OF = {"Aw": "POS", "HQ": "POS", "SQ": "NEG", "SP": "NEG"}

# Experiment-2 weighting: coefficient 100 on these ten features,
# first-person and the three lexical-richness bands excluded outright
ATTENUATED_FEATURES = (
    "demonstrative_freq", "deictic_article_ratio", "relative_ratio", "past_ratio",
    "conn_additive_neg", "conn_causal_pos", "conn_causal_neg",
    "conn_temporal_pos", "conn_temporal_neg", "conn_logical_neg",
)
EXCLUDED_FEATURES = ("first_person_ratio", "lr1", "lr2", "lr3")


class VectorError(ValueError):
    pass


class Profile(Protocol):
    values: Mapping[str, float]
    missing: set[str]


@dataclass(frozen=True)
class FeatureVector:
    doc_id: str
    feature_ids: tuple[str, ...]
    values: tuple[float, ...]
    missing: frozenset[str] = frozenset()
    imputed: frozenset[str] = frozenset()

    def __post_init__(self):
        if len(self.feature_ids) != len(self.values):
            raise VectorError(
                f"{self.doc_id}: {len(self.values)} values for "
                f"{len(self.feature_ids)} feature ids")

    def value_of(self, feature_id: str) -> float:
        return self.values[self.feature_ids.index(feature_id)]

    def as_dict(self) -> dict[str, float]:
        return dict(zip(self.feature_ids, self.values))


@dataclass(frozen=True)
class WeightConfig:
    coefficients: Mapping[str, float] = field(default_factory=dict)
    excluded: frozenset[str] = frozenset()

    def __post_init__(self):
        overlap = set(self.coefficients) & self.excluded
        if overlap:
            raise VectorError(f"features both weighted and excluded: {sorted(overlap)}")
        bad = {f: c for f, c in self.coefficients.items() if not c >= 1.0}
        if bad:
            raise VectorError(f"coefficients must be >= 1: {bad}")

    def coefficient(self, feature_id: str) -> float:
        return float(self.coefficients.get(feature_id, 1.0))

    def validate_against(self, registry: FeatureRegistry):
        unknown = (set(self.coefficients) | self.excluded) - set(registry.all_ids)
        if unknown:
            raise VectorError(f"weight config names unknown features: {sorted(unknown)}")


UNWEIGHTED = WeightConfig()


def experiment2_weights() -> WeightConfig:
    return WeightConfig(coefficients={f: 100.0 for f in ATTENUATED_FEATURES},
                        excluded=frozenset(EXCLUDED_FEATURES))


def assemble_vector(doc_id: str, profiles: Iterable[Profile],
                    registry: FeatureRegistry | None = None) -> FeatureVector:
    """Merge family profiles into one vector in registry order.

    The registry is authoritative: ids it does not know are an error, ids
    it knows but has disabled are dropped."""
    registry = registry or default_registry()
    known = set(registry.all_ids)
    valued: dict[str, float] = {}
    missing: set[str] = set()
    for profile in profiles:
        supplied = set(profile.values) | set(profile.missing)
        unknown = supplied - known
        if unknown:
            raise VectorError(f"{doc_id}: unknown feature ids {sorted(unknown)}")
        clash = (set(profile.values) & set(valued)) | (set(profile.missing) & missing)
        if clash:
            raise VectorError(f"{doc_id}: feature ids supplied twice {sorted(clash)}")
        valued.update(profile.values)
        missing.update(profile.missing)
    uncovered = [f for f in registry.enabled_ids if f not in valued and f not in missing]
    if uncovered:
        raise VectorError(f"{doc_id}: no profile supplied {uncovered}")
    values = tuple(valued.get(f, math.nan) for f in registry.enabled_ids)
    return FeatureVector(doc_id=doc_id, feature_ids=registry.enabled_ids,
                         values=values,
                         missing=frozenset(f for f in registry.enabled_ids
                                           if f in missing))


@dataclass(frozen=True)
class BaselineProfile:
    registry: FeatureRegistry
    means: Mapping[str, float]
    force_excluded: frozenset[str]
    weight_config: WeightConfig
    vectors_unweighted: tuple[FeatureVector, ...]
    vectors_weighted: tuple[FeatureVector, ...]
    class_maps: Mapping[str, Mapping[str, str]]

    @property
    def strategies(self) -> tuple[str, ...]:
        return tuple(self.class_maps)

    def classes_of(self, strategy: str) -> tuple[str, ...]:
        if strategy not in self.class_maps:
            raise VectorError(f"unknown grouping strategy {strategy!r}; "
                              f"available: {list(self.class_maps)}")
        return tuple(sorted(set(self.class_maps[strategy].values())))


def _feature_means(vectors: list[FeatureVector],
                   registry: FeatureRegistry) -> tuple[dict[str, float], set[str]]:
    means: dict[str, float] = {}
    force_excluded: set[str] = set()
    for pos, fid in enumerate(registry.enabled_ids):
        present = [v.values[pos] for v in vectors if fid not in v.missing]
        if not present:
            warnings.warn(f"feature {fid} missing in every baseline document; "
                          f"force-excluding it")
            force_excluded.add(fid)
            continue
        mean = math.fsum(present) / len(present)
        if mean == 0.0:
            warnings.warn(f"feature {fid} has zero baseline mean; force-excluding it")
            force_excluded.add(fid)
            continue
        if not math.isfinite(mean):
            raise VectorError(f"feature {fid} has non-finite baseline mean")
        means[fid] = mean
    return means, force_excluded


def compute_baseline(vectors: list[FeatureVector],
                     labels: Mapping[str, str],
                     weight_config: WeightConfig | None = None,
                     automatic_labels: Mapping[str, str] | None = None,
                     registry: FeatureRegistry | None = None) -> BaselineProfile:
    """Means over the baseline corpus plus normalized copies of it.

    `labels` is the Original grouping; the Merged grouping derives from it
    (Aw/HQ -> POS, SQ/SP -> NEG) when the labels allow, and an Automatic
    grouping can be supplied alongside."""
    registry = registry or default_registry()
    weight_config = experiment2_weights() if weight_config is None else weight_config
    weight_config.validate_against(registry)
    if len(vectors) < 2:
        raise VectorError("baseline needs at least 2 vectors")
    seen = set()
    for v in vectors:
        if v.feature_ids != registry.enabled_ids:
            raise VectorError(f"{v.doc_id}: vector not aligned to registry")
        if v.doc_id in seen:
            raise VectorError(f"duplicate baseline doc_id {v.doc_id}")
        seen.add(v.doc_id)
    unlabeled = [v.doc_id for v in vectors if v.doc_id not in labels]
    if unlabeled:
        raise VectorError(f"baseline documents without a class label: {unlabeled}")

    means, force_excluded = _feature_means(vectors, registry)

    class_maps: dict[str, dict[str, str]] = {
        "Original": {v.doc_id: labels[v.doc_id] for v in vectors}}
    if all(labels[v.doc_id] in MERGED_OF for v in vectors):
        class_maps["Merged"] = {v.doc_id: MERGED_OF[labels[v.doc_id]] for v in vectors}
    if automatic_labels is not None:
        missing_auto = [v.doc_id for v in vectors if v.doc_id not in automatic_labels]
        if missing_auto:
            raise VectorError(f"automatic grouping misses documents: {missing_auto}")
        class_maps["Automatic"] = {v.doc_id: automatic_labels[v.doc_id]
                                   for v in vectors}

    profile = BaselineProfile(
        registry=registry, means=means, force_excluded=frozenset(force_excluded),
        weight_config=weight_config, vectors_unweighted=(), vectors_weighted=(),
        class_maps=class_maps)
    unweighted = tuple(normalize(v, profile, UNWEIGHTED) for v in vectors)
    weighted = tuple(normalize(v, profile, weight_config) for v in vectors)
    return BaselineProfile(
        registry=registry, means=means, force_excluded=frozenset(force_excluded),
        weight_config=weight_config, vectors_unweighted=unweighted,
        vectors_weighted=weighted, class_maps=class_maps)


def internal_baseline(vectors: list[FeatureVector],
                      registry: FeatureRegistry | None = None) -> BaselineProfile:
    """Unweighted baseline over the corpus's own means, no class structure.

    This is the clustering-experiment normalization: every feature at
    coefficient 1, nothing excluded, means internal to the corpus itself."""
    registry = registry or default_registry()
    if len(vectors) < 2:
        raise VectorError("baseline needs at least 2 vectors")
    for v in vectors:
        if v.feature_ids != registry.enabled_ids:
            raise VectorError(f"{v.doc_id}: vector not aligned to registry")
    means, force_excluded = _feature_means(vectors, registry)
    profile = BaselineProfile(
        registry=registry, means=means, force_excluded=frozenset(force_excluded),
        weight_config=UNWEIGHTED, vectors_unweighted=(), vectors_weighted=(),
        class_maps={})
    normalized = tuple(normalize(v, profile, UNWEIGHTED) for v in vectors)
    return BaselineProfile(
        registry=registry, means=means, force_excluded=frozenset(force_excluded),
        weight_config=UNWEIGHTED, vectors_unweighted=normalized,
        vectors_weighted=normalized, class_maps={})


def normalize(v: FeatureVector, baseline: BaselineProfile,
              weight_config: WeightConfig | None = None) -> FeatureVector:
    """Mean-scale v against the baseline; the output vector holds only the
    effective (non-excluded) dimensions."""
    registry = baseline.registry
    weight_config = baseline.weight_config if weight_config is None else weight_config
    weight_config.validate_against(registry)
    if v.feature_ids != registry.enabled_ids:
        raise VectorError(f"{v.doc_id}: vector not aligned to baseline registry")
    dropped = weight_config.excluded | baseline.force_excluded
    effective = tuple(f for f in registry.enabled_ids if f not in dropped)
    position = {f: i for i, f in enumerate(v.feature_ids)}
    out = []
    imputed = []
    for fid in effective:
        c = weight_config.coefficient(fid)
        if fid in v.missing:
            out.append(100.0 / c)
            imputed.append(fid)
            continue
        mean = baseline.means.get(fid)
        if mean is None or mean == 0.0:
            raise VectorError(f"feature {fid} has no usable baseline mean")
        out.append(v.values[position[fid]] / (mean * c) * 100.0)
    return FeatureVector(doc_id=v.doc_id, feature_ids=effective,
                         values=tuple(out), missing=frozenset(),
                         imputed=frozenset(imputed))
