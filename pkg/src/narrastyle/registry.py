"""Canonical feature registry.

The default registry enables 33 features (21 lexical, 9 syntactic, 3
semantic); `lexical_overlap_2`, `lexical_overlap_3` and `subordinate_ratio`
are carried but disabled by default and can be switched on via config.
All vectors share the registry's fixed order.
"""

from __future__ import annotations

from dataclasses import dataclass

LEXICAL = "lexical"
SYNTACTIC = "syntactic"
SEMANTIC = "semantic"

# (feature_id, group, enabled_by_default)
CANONICAL_FEATURES: tuple[tuple[str, str, bool], ...] = (
    ("d_textual_value", LEXICAL, True),
    ("lr1", LEXICAL, True),
    ("lr2", LEXICAL, True),
    ("lr3", LEXICAL, True),
    ("concreteness", LEXICAL, True),
    ("noun_pronoun_ratio", LEXICAL, True),
    ("deictic_article_ratio", LEXICAL, True),
    ("definite_article_freq", LEXICAL, True),
    ("attributive_adj_freq", LEXICAL, True),
    ("emphatic_particle_freq", LEXICAL, True),
    ("demonstrative_freq", LEXICAL, True),
    ("first_person_ratio", LEXICAL, True),
    ("hapax_ratio", LEXICAL, True),
    ("lexical_overlap_2", LEXICAL, False),
    ("lexical_overlap_3", LEXICAL, False),
    ("conn_additive_pos", LEXICAL, True),
    ("conn_additive_neg", LEXICAL, True),
    ("conn_causal_pos", LEXICAL, True),
    ("conn_causal_neg", LEXICAL, True),
    ("conn_temporal_pos", LEXICAL, True),
    ("conn_temporal_neg", LEXICAL, True),
    ("conn_logical_pos", LEXICAL, True),
    ("conn_logical_neg", LEXICAL, True),
    ("relative_ratio", SYNTACTIC, True),
    ("subordinate_ratio", SYNTACTIC, False),
    ("present_ratio", SYNTACTIC, True),
    ("past_ratio", SYNTACTIC, True),
    ("participle_ratio", SYNTACTIC, True),
    ("modifier_per_noun", SYNTACTIC, True),
    ("avg_graph_depth", SYNTACTIC, True),
    ("verb_density", SYNTACTIC, True),
    ("temporal_stability", SYNTACTIC, True),
    ("hypotactic_depth", SYNTACTIC, True),
    ("avg_semantic_overlap", SEMANTIC, True),
    ("tfi_per_sent", SEMANTIC, True),
    ("tfi_per_1000", SEMANTIC, True),
)


class RegistryError(ValueError):
    pass


@dataclass(frozen=True)
class FeatureRegistry:
    entries: tuple[tuple[str, str, bool], ...]

    def __post_init__(self):
        ids = [fid for fid, _, _ in self.entries]
        if len(ids) != len(set(ids)):
            raise RegistryError("duplicate feature ids in registry")

    @property
    def all_ids(self) -> tuple[str, ...]:
        return tuple(fid for fid, _, _ in self.entries)

    @property
    def enabled_ids(self) -> tuple[str, ...]:
        return tuple(fid for fid, _, enabled in self.entries if enabled)

    def group_of(self, feature_id: str) -> str:
        for fid, group, _ in self.entries:
            if fid == feature_id:
                return group
        raise RegistryError(f"unknown feature id {feature_id!r}")

    def __contains__(self, feature_id: str) -> bool:
        return feature_id in self.all_ids

    def with_overrides(self, enable: list[str] = (), disable: list[str] = ()) -> "FeatureRegistry":
        for fid in list(enable) + list(disable):
            if fid not in self:
                raise RegistryError(f"unknown feature id {fid!r} in registry override")
        new_entries = []
        for fid, group, enabled in self.entries:
            if fid in disable:
                enabled = False
            elif fid in enable:
                enabled = True
            new_entries.append((fid, group, enabled))
        return FeatureRegistry(entries=tuple(new_entries))


def default_registry() -> FeatureRegistry:
    return FeatureRegistry(entries=CANONICAL_FEATURES)
