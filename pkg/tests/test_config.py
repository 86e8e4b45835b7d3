from __future__ import annotations

import json

import pytest

from narrastyle.config import (SCHEMA_VERSION, ConfigError, PipelineConfig,
                               config_from_dict, load_config)
from narrastyle.vectors import ATTENUATED_FEATURES, EXCLUDED_FEATURES


def minimal():
    return {"schema_version": SCHEMA_VERSION}


class TestDefaults:
    def test_default_config_validates(self):
        cfg = PipelineConfig().validate()
        assert cfg.strategy == "Original"
        assert cfg.formula == "Aw-SP-SQ"
        assert cfg.resolution == 1.0
        assert cfg.seed == 0
        assert cfg.edge_threshold == 0.0
        assert cfg.figurative_thresholds == (0.40, 0.30)
        assert cfg.transformed_scoring is False

    def test_default_weights_are_attenuation_scheme(self):
        cfg = PipelineConfig()
        assert set(cfg.weights.coefficients) == set(ATTENUATED_FEATURES)
        assert all(c == 100.0 for c in cfg.weights.coefficients.values())
        assert cfg.weights.excluded == frozenset(EXCLUDED_FEATURES)

    def test_registry_applies_overrides(self):
        cfg = PipelineConfig(enable_features=("lexical_overlap_2",),
                             disable_features=("concreteness",))
        reg = cfg.registry()
        assert "lexical_overlap_2" in reg.enabled_ids
        assert "concreteness" not in reg.enabled_ids

    def test_unknown_feature_override(self):
        with pytest.raises(ConfigError, match="nope"):
            PipelineConfig(enable_features=("nope",)).registry()


class TestValidate:
    def test_unknown_strategy(self):
        with pytest.raises(ConfigError, match="unknown strategy"):
            PipelineConfig(strategy="Fancy").validate()

    def test_malformed_formula(self):
        with pytest.raises(ConfigError, match="malformed formula"):
            PipelineConfig(formula="Aw-").validate()
        with pytest.raises(ConfigError, match="malformed formula"):
            PipelineConfig(formula="1Aw").validate()

    def test_formula_checked_for_syntax_only(self):
        # label resolution happens at scoring time, not config time
        PipelineConfig(formula="NoSuchClass").validate()

    def test_nonpositive_resolution(self):
        with pytest.raises(ConfigError, match="resolution must be positive"):
            PipelineConfig(resolution=0.0).validate()

    def test_negative_edge_threshold(self):
        with pytest.raises(ConfigError, match="edge_threshold"):
            PipelineConfig(edge_threshold=-0.5).validate()

    def test_figurative_threshold_range(self):
        with pytest.raises(ConfigError, match="thresholds"):
            PipelineConfig(figurative_thresholds=(1.5, 0.3)).validate()
        with pytest.raises(ConfigError, match="thresholds"):
            PipelineConfig(figurative_thresholds=(0.4, -1.01)).validate()

    def test_weights_checked_against_registry(self):
        from narrastyle.vectors import WeightConfig
        cfg = PipelineConfig(weights=WeightConfig(coefficients={"ghost": 5.0}))
        with pytest.raises(ConfigError, match="ghost"):
            cfg.validate()


class TestOverride:
    def test_override_replaces_and_validates(self):
        cfg = PipelineConfig().override(seed=7, resolution=2.0)
        assert cfg.seed == 7
        assert cfg.resolution == 2.0

    def test_none_values_ignored(self):
        cfg = PipelineConfig()
        assert cfg.override(seed=None) is cfg

    def test_override_validation_fails(self):
        with pytest.raises(ConfigError, match="resolution"):
            PipelineConfig().override(resolution=-1.0)


class TestFromDict:
    def test_minimal(self):
        cfg = config_from_dict(minimal())
        assert cfg == PipelineConfig().validate()

    def test_schema_version_required(self):
        with pytest.raises(ConfigError, match="schema_version is required"):
            config_from_dict({})

    def test_schema_version_checked(self):
        with pytest.raises(ConfigError, match="unsupported schema_version 2"):
            config_from_dict({"schema_version": 2})

    def test_unknown_keys_rejected(self):
        with pytest.raises(ConfigError, match=r"unknown config keys: \['colour'\]"):
            config_from_dict(minimal() | {"colour": "red"})

    def test_not_an_object(self):
        with pytest.raises(ConfigError, match="must be a JSON object"):
            config_from_dict([1, 2])

    def test_full_round(self):
        data = minimal() | {
            "resource_dir": "/tmp/res",
            "enable_features": ["lexical_overlap_2"],
            "disable_features": ["concreteness"],
            "weights": {"coefficients": {"past_ratio": 50},
                        "excluded": ["lr1"]},
            "strategy": "Merged",
            "formula": "POS-NEG",
            "resolution": 1.5,
            "seed": 3,
            "edge_threshold": 0.1,
            "figurative_thresholds": [0.5, 0.25],
            "output_dir": "out",
            "transformed_scoring": True,
        }
        cfg = config_from_dict(data)
        assert cfg.resource_dir == "/tmp/res"
        assert cfg.weights.coefficients == {"past_ratio": 50.0}
        assert cfg.weights.excluded == frozenset({"lr1"})
        assert cfg.strategy == "Merged"
        assert cfg.formula == "POS-NEG"
        assert cfg.resolution == 1.5
        assert cfg.seed == 3
        assert cfg.edge_threshold == 0.1
        assert cfg.figurative_thresholds == (0.5, 0.25)
        assert cfg.output_dir == "out"
        assert cfg.transformed_scoring is True

    @pytest.mark.parametrize("key,value,message", [
        ("resource_dir", 3, "resource_dir must be a string"),
        ("enable_features", "lr1", "array of strings"),
        ("disable_features", [1], "array of strings"),
        ("weights", [1], "weights must be an object"),
        ("weights", {"coeffs": {}}, "unknown weights keys"),
        ("weights", {"coefficients": {"lr1": "big"}}, "map feature ids to numbers"),
        ("weights", {"coefficients": {"lr1": True}}, "map feature ids to numbers"),
        ("strategy", 1, "strategy must be a string"),
        ("formula", 1, "formula must be a string"),
        ("resolution", "fast", "resolution must be a number"),
        ("resolution", True, "resolution must be a number"),
        ("seed", 1.5, "seed must be an integer"),
        ("seed", True, "seed must be an integer"),
        ("edge_threshold", None, "edge_threshold must be a number"),
        ("figurative_thresholds", [0.4], r"\[candidate, control\]"),
        ("figurative_thresholds", [0.4, "lo"], r"\[candidate, control\]"),
        ("transformed_scoring", 1, "must be a boolean"),
        ("output_dir", False, "output_dir must be a string"),
    ])
    def test_typed_field_errors(self, key, value, message):
        with pytest.raises(ConfigError, match=message):
            config_from_dict(minimal() | {key: value})

    def test_weight_constraint_surfaces(self):
        data = minimal() | {"weights": {"coefficients": {"past_ratio": 0.5}}}
        with pytest.raises(ConfigError, match="must be >= 1"):
            config_from_dict(data)

    def test_source_prefix_in_errors(self):
        with pytest.raises(ConfigError, match=r"^cfg\.json: unknown config"):
            config_from_dict(minimal() | {"x": 1}, source="cfg.json")


class TestLoadConfig:
    def test_none_gives_defaults(self):
        assert load_config(None) == PipelineConfig().validate()

    def test_reads_file(self, tmp_path):
        path = tmp_path / "cfg.json"
        path.write_text(json.dumps(minimal() | {"seed": 9}))
        assert load_config(path).seed == 9

    def test_missing_file(self, tmp_path):
        with pytest.raises(ConfigError, match="cannot read config"):
            load_config(tmp_path / "absent.json")

    def test_invalid_json(self, tmp_path):
        path = tmp_path / "cfg.json"
        path.write_text("{not json")
        with pytest.raises(ConfigError, match="invalid JSON"):
            load_config(path)

    def test_file_errors_name_the_path(self, tmp_path):
        path = tmp_path / "cfg.json"
        path.write_text(json.dumps({"schema_version": 99}))
        with pytest.raises(ConfigError, match="cfg.json"):
            load_config(path)
