from __future__ import annotations

import math
import random

import pytest

from narrastyle.registry import default_registry
from narrastyle.vectors import (EXCLUDED_FEATURES, UNWEIGHTED, FeatureVector,
                                VectorError, WeightConfig, assemble_vector,
                                compute_baseline, experiment2_weights,
                                internal_baseline, normalize)

REG = default_registry()


def make_vec(doc_id, fill=1.0, overrides=None, missing=()):
    overrides = overrides or {}
    values = tuple(math.nan if f in missing else float(overrides.get(f, fill))
                   for f in REG.enabled_ids)
    return FeatureVector(doc_id=doc_id, feature_ids=REG.enabled_ids,
                         values=values, missing=frozenset(missing))


def random_vecs(rng, count, missing_rate=0.0):
    out = []
    for i in range(count):
        missing = tuple(f for f in REG.enabled_ids if rng.random() < missing_rate)
        overrides = {f: rng.uniform(0.1, 50.0) for f in REG.enabled_ids}
        out.append(make_vec(f"d{i}", overrides=overrides, missing=missing))
    return out


class TestFeatureVector:
    def test_length_check(self):
        with pytest.raises(VectorError, match="values for"):
            FeatureVector(doc_id="d", feature_ids=("a", "b"), values=(1.0,))

    def test_value_of(self):
        v = make_vec("d", overrides={"hapax_ratio": 0.4})
        assert v.value_of("hapax_ratio") == 0.4

    def test_as_dict(self):
        v = make_vec("d")
        assert set(v.as_dict()) == set(REG.enabled_ids)


class TestWeightConfig:
    def test_experiment2_shape(self):
        wc = experiment2_weights()
        assert len(wc.coefficients) == 10
        assert all(c == 100.0 for c in wc.coefficients.values())
        assert wc.excluded == frozenset(EXCLUDED_FEATURES)
        assert wc.coefficient("past_ratio") == 100.0
        assert wc.coefficient("hapax_ratio") == 1.0

    def test_coefficient_below_one_rejected(self):
        with pytest.raises(VectorError, match=">= 1"):
            WeightConfig(coefficients={"hapax_ratio": 0.5})

    def test_weighted_and_excluded_overlap_rejected(self):
        with pytest.raises(VectorError, match="both weighted and excluded"):
            WeightConfig(coefficients={"lr1": 2.0}, excluded=frozenset({"lr1"}))

    def test_unknown_feature_rejected(self):
        wc = WeightConfig(coefficients={"bogus": 2.0})
        with pytest.raises(VectorError, match="unknown features"):
            wc.validate_against(REG)


class TestAssemble:
    class P:
        def __init__(self, values, missing=()):
            self.values = values
            self.missing = set(missing)

    def test_families_merge_in_registry_order(self, docs, mini_res, docs_dir):
        import os
        from narrastyle.lexical import lexical_profile
        from narrastyle.semantic import (read_embeddings, read_figurative,
                                         semantic_profile)
        from narrastyle.syntactic import syntactic_profile
        doc = docs["m12"]
        profiles = [
            lexical_profile(doc, mini_res),
            syntactic_profile(doc),
            semantic_profile(doc,
                             read_embeddings(os.path.join(docs_dir, "m12.emb.jsonl")),
                             read_figurative(os.path.join(docs_dir, "m12.fig.jsonl"))),
        ]
        v = assemble_vector("m12", profiles)
        assert v.feature_ids == REG.enabled_ids
        assert v.value_of("tfi_per_sent") == 1 / 3
        # disabled registry entries are computed by the family but dropped here
        assert "lexical_overlap_2" not in v.feature_ids

    def test_missing_become_nan_with_flag(self, docs, mini_res):
        from narrastyle.lexical import lexical_profile
        from narrastyle.semantic import semantic_profile
        from narrastyle.syntactic import syntactic_profile
        doc = docs["m01"]
        v = assemble_vector("m01", [lexical_profile(doc, mini_res),
                                    syntactic_profile(doc),
                                    semantic_profile(doc, None, None)])
        assert v.missing == frozenset(
            {"avg_semantic_overlap", "tfi_per_sent", "tfi_per_1000"})
        for fid in v.missing:
            assert math.isnan(v.value_of(fid))

    def test_unknown_id_rejected(self):
        with pytest.raises(VectorError, match="unknown feature ids"):
            assemble_vector("d", [self.P({"not_a_feature": 1.0})])

    def test_duplicate_supply_rejected(self):
        full = {f: 1.0 for f in REG.enabled_ids}
        with pytest.raises(VectorError, match="twice"):
            assemble_vector("d", [self.P(full), self.P({"hapax_ratio": 2.0})])

    def test_uncovered_rejected(self):
        with pytest.raises(VectorError, match="no profile supplied"):
            assemble_vector("d", [self.P({"hapax_ratio": 1.0})])


class TestInternalBaseline:
    def test_column_means_are_100(self):
        rng = random.Random(5)
        vecs = random_vecs(rng, 8)
        profile = internal_baseline(vecs)
        norm = profile.vectors_unweighted
        for pos in range(len(norm[0].feature_ids)):
            mean = math.fsum(v.values[pos] for v in norm) / len(norm)
            assert abs(mean - 100.0) < 1e-9

    def test_identity_of_each_entry(self):
        rng = random.Random(6)
        vecs = random_vecs(rng, 5)
        profile = internal_baseline(vecs)
        for raw, out in zip(vecs, profile.vectors_unweighted):
            for fid in out.feature_ids:
                expected = raw.value_of(fid) / profile.means[fid] * 100.0
                assert out.value_of(fid) == pytest.approx(expected, abs=1e-9)

    def test_no_class_structure(self):
        vecs = random_vecs(random.Random(7), 3)
        profile = internal_baseline(vecs)
        assert profile.strategies == ()
        assert profile.weight_config == UNWEIGHTED

    def test_needs_two(self):
        with pytest.raises(VectorError, match="at least 2"):
            internal_baseline([make_vec("solo")])


class TestNormalize:
    def test_formula(self):
        base_vecs = [make_vec("b1", overrides={"hapax_ratio": 2.0}),
                     make_vec("b2", overrides={"hapax_ratio": 6.0})]
        profile = internal_baseline(base_vecs)
        cand = make_vec("c", overrides={"hapax_ratio": 8.0})
        out = normalize(cand, profile)
        # mean 4.0, coefficient 1 -> 8 / 4 * 100
        assert out.value_of("hapax_ratio") == 200.0

    def test_attenuation_divides_by_coefficient(self):
        base_vecs = [make_vec("b1"), make_vec("b2")]
        profile = internal_baseline(base_vecs)
        cand = make_vec("c", overrides={"past_ratio": 2.0})
        out = normalize(cand, profile, experiment2_weights())
        assert out.value_of("past_ratio") == pytest.approx(2.0, abs=1e-12)
        assert out.value_of("hapax_ratio") == pytest.approx(100.0, abs=1e-12)

    def test_excluded_features_dropped(self):
        profile = internal_baseline([make_vec("b1"), make_vec("b2")])
        out = normalize(make_vec("c"), profile, experiment2_weights())
        assert len(out.feature_ids) == 29
        for fid in EXCLUDED_FEATURES:
            assert fid not in out.feature_ids

    def test_missing_imputes_neutral(self):
        profile = internal_baseline([make_vec("b1"), make_vec("b2")])
        cand = make_vec("c", missing=("hapax_ratio", "past_ratio"))
        out = normalize(cand, profile, experiment2_weights())
        assert out.value_of("hapax_ratio") == 100.0
        assert out.value_of("past_ratio") == 1.0
        assert out.imputed == frozenset({"hapax_ratio", "past_ratio"})

    def test_imputed_value_equals_baseline_mean_normalization(self):
        # imputing 100/c is exactly what a document at the baseline mean gets
        profile = internal_baseline([make_vec("b1", fill=3.0),
                                     make_vec("b2", fill=5.0)])
        at_mean = make_vec("c", fill=4.0)
        imput = make_vec("c", missing=tuple(REG.enabled_ids))
        out_mean = normalize(at_mean, profile, experiment2_weights())
        out_imp = normalize(imput, profile, experiment2_weights())
        for fid in out_mean.feature_ids:
            assert out_mean.value_of(fid) == pytest.approx(
                out_imp.value_of(fid), abs=1e-9)

    def test_misaligned_vector_rejected(self):
        profile = internal_baseline([make_vec("b1"), make_vec("b2")])
        odd = FeatureVector(doc_id="c", feature_ids=("hapax_ratio",), values=(1.0,))
        with pytest.raises(VectorError, match="not aligned"):
            normalize(odd, profile)


class TestForceExclusion:
    def test_all_missing_feature_warns_and_drops(self):
        vecs = [make_vec("b1", missing=("temporal_stability",)),
                make_vec("b2", missing=("temporal_stability",))]
        with pytest.warns(UserWarning, match="missing in every baseline"):
            profile = internal_baseline(vecs)
        assert "temporal_stability" in profile.force_excluded
        assert "temporal_stability" not in profile.vectors_unweighted[0].feature_ids

    def test_zero_mean_feature_warns_and_drops(self):
        vecs = [make_vec("b1", overrides={"hapax_ratio": 0.0}),
                make_vec("b2", overrides={"hapax_ratio": 0.0})]
        with pytest.warns(UserWarning, match="zero baseline mean"):
            profile = internal_baseline(vecs)
        assert "hapax_ratio" in profile.force_excluded


class TestComputeBaseline:
    def labels_for(self, vecs):
        cycle = ["Aw", "HQ", "SQ", "SP"]
        return {v.doc_id: cycle[i % 4] for i, v in enumerate(vecs)}

    def test_strategies_original_and_merged(self):
        vecs = random_vecs(random.Random(8), 8)
        profile = compute_baseline(vecs, self.labels_for(vecs))
        assert set(profile.strategies) == {"Original", "Merged"}
        assert profile.classes_of("Original") == ("Aw", "HQ", "SP", "SQ")
        assert profile.classes_of("Merged") == ("NEG", "POS")

    def test_merged_skipped_for_foreign_labels(self):
        vecs = random_vecs(random.Random(9), 4)
        labels = {v.doc_id: f"K{i % 2}" for i, v in enumerate(vecs)}
        profile = compute_baseline(vecs, labels)
        assert profile.strategies == ("Original",)

    def test_automatic_requires_full_coverage(self):
        vecs = random_vecs(random.Random(10), 4)
        auto = {vecs[0].doc_id: "C0"}
        with pytest.raises(VectorError, match="automatic grouping misses"):
            compute_baseline(vecs, self.labels_for(vecs), automatic_labels=auto)

    def test_automatic_strategy_added(self):
        vecs = random_vecs(random.Random(11), 6)
        auto = {v.doc_id: f"C{i % 3}" for i, v in enumerate(vecs)}
        profile = compute_baseline(vecs, self.labels_for(vecs),
                                   automatic_labels=auto)
        assert "Automatic" in profile.strategies
        assert profile.classes_of("Automatic") == ("C0", "C1", "C2")

    def test_unlabeled_rejected(self):
        vecs = random_vecs(random.Random(12), 3)
        labels = self.labels_for(vecs[:-1])
        with pytest.raises(VectorError, match="without a class label"):
            compute_baseline(vecs, labels)

    def test_duplicate_doc_rejected(self):
        v = make_vec("dup")
        with pytest.raises(VectorError, match="duplicate"):
            compute_baseline([v, v], {"dup": "Aw"})

    def test_weighted_vectors_use_weight_config(self):
        vecs = random_vecs(random.Random(13), 4)
        profile = compute_baseline(vecs, self.labels_for(vecs))
        assert len(profile.vectors_unweighted[0].feature_ids) == 33
        assert len(profile.vectors_weighted[0].feature_ids) == 29

    def test_unknown_strategy_error(self):
        vecs = random_vecs(random.Random(14), 4)
        profile = compute_baseline(vecs, self.labels_for(vecs))
        with pytest.raises(VectorError, match="unknown grouping strategy"):
            profile.classes_of("Nope")
