"""Run configuration: JSON with an explicit schema version.

Unknown keys are rejected outright so typos fail loudly instead of
silently falling back to defaults. CLI flags override file values.
"""

from __future__ import annotations

import json
import re
from dataclasses import dataclass, field, replace
from pathlib import Path

from .dpi import DEFAULT_FORMULA, DEFAULT_STRATEGY, STRATEGY_CLASSES
from .registry import FeatureRegistry, RegistryError, default_registry
from .semantic import DEFAULT_THRESHOLDS
from .vectors import WeightConfig, experiment2_weights

SCHEMA_VERSION = 1

_ALLOWED_KEYS = frozenset({
    "schema_version", "resource_dir", "enable_features", "disable_features",
    "weights", "strategy", "formula", "resolution", "seed", "edge_threshold",
    "figurative_thresholds", "output_dir", "transformed_scoring",
})
_WEIGHT_KEYS = frozenset({"coefficients", "excluded"})

_FORMULA_RE = re.compile(
    r"\s*[A-Za-z][A-Za-z0-9_]*\s*(?:[+-]\s*[A-Za-z][A-Za-z0-9_]*\s*)*")


class ConfigError(ValueError):
    pass


@dataclass(frozen=True)
class PipelineConfig:
    resource_dir: str | None = None
    enable_features: tuple[str, ...] = ()
    disable_features: tuple[str, ...] = ()
    weights: WeightConfig = field(default_factory=experiment2_weights)
    strategy: str = DEFAULT_STRATEGY
    formula: str = DEFAULT_FORMULA
    resolution: float = 1.0
    seed: int = 0
    edge_threshold: float = 0.0
    figurative_thresholds: tuple[float, float] = DEFAULT_THRESHOLDS
    output_dir: str = "."
    transformed_scoring: bool = False

    def registry(self) -> FeatureRegistry:
        try:
            return default_registry().with_overrides(
                enable=list(self.enable_features),
                disable=list(self.disable_features))
        except RegistryError as exc:
            raise ConfigError(str(exc)) from exc

    def validate(self) -> "PipelineConfig":
        registry = self.registry()
        try:
            self.weights.validate_against(registry)
        except ValueError as exc:
            raise ConfigError(str(exc)) from exc
        if self.strategy not in STRATEGY_CLASSES:
            raise ConfigError(f"unknown strategy {self.strategy!r}; "
                              f"known: {list(STRATEGY_CLASSES)}")
        if _FORMULA_RE.fullmatch(self.formula) is None:
            raise ConfigError(f"malformed formula {self.formula!r}")
        if not self.resolution > 0:
            raise ConfigError("resolution must be positive")
        if self.edge_threshold < 0:
            raise ConfigError("edge_threshold must be >= 0")
        lo, hi = self.figurative_thresholds
        if not (-1.0 <= lo <= 1.0 and -1.0 <= hi <= 1.0):
            raise ConfigError("figurative thresholds must lie in [-1, 1]")
        return self

    def override(self, **kwargs) -> "PipelineConfig":
        supplied = {k: v for k, v in kwargs.items() if v is not None}
        return replace(self, **supplied).validate() if supplied else self


def _expect(cond: bool, message: str, source: str | None):
    if not cond:
        prefix = f"{source}: " if source else ""
        raise ConfigError(prefix + message)


def _string_list(value, key, source) -> tuple[str, ...]:
    _expect(isinstance(value, list) and all(isinstance(x, str) for x in value),
            f"{key} must be an array of strings", source)
    return tuple(value)


def config_from_dict(data: dict, source: str | None = None) -> PipelineConfig:
    _expect(isinstance(data, dict), "config must be a JSON object", source)
    unknown = set(data) - _ALLOWED_KEYS
    _expect(not unknown, f"unknown config keys: {sorted(unknown)}", source)
    _expect("schema_version" in data, "schema_version is required", source)
    _expect(data["schema_version"] == SCHEMA_VERSION,
            f"unsupported schema_version {data['schema_version']!r} "
            f"(expected {SCHEMA_VERSION})", source)

    kwargs: dict = {}
    if "resource_dir" in data:
        _expect(isinstance(data["resource_dir"], str), "resource_dir must be a string",
                source)
        kwargs["resource_dir"] = data["resource_dir"]
    if "enable_features" in data:
        kwargs["enable_features"] = _string_list(data["enable_features"],
                                                 "enable_features", source)
    if "disable_features" in data:
        kwargs["disable_features"] = _string_list(data["disable_features"],
                                                  "disable_features", source)
    if "weights" in data:
        w = data["weights"]
        _expect(isinstance(w, dict), "weights must be an object", source)
        _expect(set(w) <= _WEIGHT_KEYS,
                f"unknown weights keys: {sorted(set(w) - _WEIGHT_KEYS)}", source)
        coeffs = w.get("coefficients", {})
        _expect(isinstance(coeffs, dict)
                and all(isinstance(k, str) and isinstance(v, (int, float))
                        and not isinstance(v, bool) for k, v in coeffs.items()),
                "weights.coefficients must map feature ids to numbers", source)
        excluded = w.get("excluded", [])
        try:
            kwargs["weights"] = WeightConfig(
                coefficients={k: float(v) for k, v in coeffs.items()},
                excluded=frozenset(_string_list(excluded, "weights.excluded", source)))
        except ValueError as exc:
            raise ConfigError(f"{source}: {exc}" if source else str(exc)) from exc
    for key, kind in (("strategy", str), ("formula", str), ("output_dir", str)):
        if key in data:
            _expect(isinstance(data[key], kind), f"{key} must be a string", source)
            kwargs[key] = data[key]
    for key in ("resolution", "edge_threshold"):
        if key in data:
            _expect(isinstance(data[key], (int, float)) and not isinstance(data[key], bool),
                    f"{key} must be a number", source)
            kwargs[key] = float(data[key])
    if "seed" in data:
        _expect(isinstance(data["seed"], int) and not isinstance(data["seed"], bool),
                "seed must be an integer", source)
        kwargs["seed"] = data["seed"]
    if "figurative_thresholds" in data:
        ft = data["figurative_thresholds"]
        _expect(isinstance(ft, list) and len(ft) == 2
                and all(isinstance(x, (int, float)) and not isinstance(x, bool)
                        for x in ft),
                "figurative_thresholds must be [candidate, control]", source)
        kwargs["figurative_thresholds"] = (float(ft[0]), float(ft[1]))
    if "transformed_scoring" in data:
        _expect(isinstance(data["transformed_scoring"], bool),
                "transformed_scoring must be a boolean", source)
        kwargs["transformed_scoring"] = data["transformed_scoring"]

    try:
        return PipelineConfig(**kwargs).validate()
    except ConfigError:
        raise
    except ValueError as exc:
        raise ConfigError(f"{source}: {exc}" if source else str(exc)) from exc


def load_config(path: str | Path | None) -> PipelineConfig:
    if path is None:
        return PipelineConfig().validate()
    path = Path(path)
    try:
        data = json.loads(path.read_text(encoding="utf-8"))
    except OSError as exc:
        raise ConfigError(f"cannot read config {path}: {exc}") from exc
    except json.JSONDecodeError as exc:
        raise ConfigError(f"{path}: invalid JSON ({exc.msg})") from exc
    return config_from_dict(data, source=str(path))
