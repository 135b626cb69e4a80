"""Run-configuration parsing for the CLI.

Configurations are JSON objects with the keys

    transform     (required) "pow2" | "square" | "cube" | "exp" | "identity"
    dimensions    1 or 2                                   (default 1)
    groups        {"a": {...}, "b": {...}}                 (defaults below)
    comparators   subset of ["euclidean", "dissimilarity"] (default both)
    k_values      list of positive ints                    (default 1..100)
    realizations  positive int                             (default 1000)
    seed          integer master seed                      (default 0)
    d_exponent    positive real                            (default 3)
    e_exponent    non-negative real                        (default 1)

Each group is {"base": <density> or [<density>, <density>], "n": int}; a
density is {"kind": "uniform", "low": a, "high": b} or {"kind": "normal",
"mean": m, "std": s}.  Unknown keys anywhere are rejected.  Default groups:
adjacent uniforms on [2,4] / [4,6] with n=100 in 1-D, and normal products
centered at (7,9) / (9,11) with unit spread and n=1000 in 2-D.

``parse_config`` resolves every default, so the echoed configuration in a
run manifest parses back to an equivalent run.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from typing import Any

from .densities import BaseDensity, Normal, Transform, Uniform
from .errors import ConfigError, InvalidInputError, UnsupportedConfigurationError
from .experiment import ExperimentConfig, GroupConfig, reference_point
from .similarity import CoincidenceDissimilarity, ComparatorKind, Euclidean

__all__ = ["RunConfig", "parse_config", "parse_config_dict", "DEFAULTS"]

COMPARATOR_NAMES = ("euclidean", "dissimilarity")

DEFAULTS = {
    "dimensions": 1,
    "comparators": list(COMPARATOR_NAMES),
    "k_values": list(range(1, 101)),
    "realizations": 1000,
    "seed": 0,
    "d_exponent": 3.0,
    "e_exponent": 1.0,
}

_DEFAULT_GROUPS = {
    1: {
        "a": {"base": {"kind": "uniform", "low": 2.0, "high": 4.0}, "n": 100},
        "b": {"base": {"kind": "uniform", "low": 4.0, "high": 6.0}, "n": 100},
    },
    2: {
        "a": {
            "base": [
                {"kind": "normal", "mean": 7.0, "std": 1.0},
                {"kind": "normal", "mean": 9.0, "std": 1.0},
            ],
            "n": 1000,
        },
        "b": {
            "base": [
                {"kind": "normal", "mean": 9.0, "std": 1.0},
                {"kind": "normal", "mean": 11.0, "std": 1.0},
            ],
            "n": 1000,
        },
    },
}


@dataclass(frozen=True)
class RunConfig:
    """A fully resolved run: experiment parameters plus comparator exponents."""

    transform_name: str
    dimensions: int
    group_a: GroupConfig
    group_b: GroupConfig
    comparator_names: tuple[str, ...]
    d_exponent: float
    e_exponent: float
    k_values: tuple[int, ...]
    realizations: int
    seed: int

    def comparators(self) -> tuple[ComparatorKind, ...]:
        kinds: list[ComparatorKind] = []
        for name in self.comparator_names:
            if name == "euclidean":
                kinds.append(Euclidean())
            else:
                kinds.append(
                    CoincidenceDissimilarity(self.d_exponent, self.e_exponent)
                )
        return tuple(kinds)

    def transform(self) -> Transform:
        return Transform(self.transform_name)

    def experiment(self) -> ExperimentConfig:
        return ExperimentConfig(
            group_a=self.group_a,
            group_b=self.group_b,
            transform=self.transform(),
            comparators=self.comparators(),
            k_values=self.k_values,
            realizations=self.realizations,
            master_seed=self.seed,
            dimensions=self.dimensions,
        )

    def experiment_id(self) -> str:
        return f"{self.transform_name}-{self.dimensions}d"

    def echo(self) -> dict:
        """JSON-serializable resolved configuration; parses back equivalent."""
        return {
            "transform": self.transform_name,
            "dimensions": self.dimensions,
            "groups": {
                "a": _group_echo(self.group_a),
                "b": _group_echo(self.group_b),
            },
            "comparators": list(self.comparator_names),
            "k_values": list(self.k_values),
            "realizations": self.realizations,
            "seed": self.seed,
            "d_exponent": self.d_exponent,
            "e_exponent": self.e_exponent,
        }


def _group_echo(group: GroupConfig) -> dict:
    bases = [_base_echo(b) for b in group.bases]
    return {"base": bases[0] if len(bases) == 1 else bases, "n": group.n}


def _base_echo(base: BaseDensity) -> dict:
    if isinstance(base, Uniform):
        return {"kind": "uniform", "low": base.low, "high": base.high}
    return {"kind": "normal", "mean": base.mean, "std": base.std}


def _require_keys(obj: dict, allowed: set[str], context: str) -> None:
    unknown = set(obj) - allowed
    if unknown:
        raise ConfigError(
            f"unknown key {sorted(unknown)[0]!r} in {context}; "
            f"allowed keys: {sorted(allowed)}"
        )


def _as_int(value: Any, key: str) -> int:
    if isinstance(value, bool) or not isinstance(value, int):
        raise ConfigError(f"{key} must be an integer, got {value!r}")
    return value


def _as_real(value: Any, key: str) -> float:
    if isinstance(value, bool) or not isinstance(value, (int, float)):
        raise ConfigError(f"{key} must be a number, got {value!r}")
    return float(value)


def _parse_base(obj: Any, context: str) -> BaseDensity:
    if not isinstance(obj, dict):
        raise ConfigError(f"{context} must be an object, got {obj!r}")
    kind = obj.get("kind")
    if kind == "uniform":
        _require_keys(obj, {"kind", "low", "high"}, context)
        for field in ("low", "high"):
            if field not in obj:
                raise ConfigError(f"{context}.{field} is required for a uniform base")
        try:
            return Uniform(
                _as_real(obj["low"], f"{context}.low"),
                _as_real(obj["high"], f"{context}.high"),
            )
        except InvalidInputError as exc:
            raise ConfigError(f"{context}: {exc}") from exc
    if kind == "normal":
        _require_keys(obj, {"kind", "mean", "std"}, context)
        for field in ("mean", "std"):
            if field not in obj:
                raise ConfigError(f"{context}.{field} is required for a normal base")
        try:
            return Normal(
                _as_real(obj["mean"], f"{context}.mean"),
                _as_real(obj["std"], f"{context}.std"),
            )
        except InvalidInputError as exc:
            raise ConfigError(f"{context}: {exc}") from exc
    raise ConfigError(
        f"{context}.kind must be 'uniform' or 'normal', got {kind!r}"
    )


def _parse_group(obj: Any, label: str, dimensions: int) -> GroupConfig:
    context = f"groups.{label}"
    if not isinstance(obj, dict):
        raise ConfigError(f"{context} must be an object")
    _require_keys(obj, {"base", "n"}, context)
    if "base" not in obj:
        raise ConfigError(f"{context}.base is required")
    if "n" not in obj:
        raise ConfigError(f"{context}.n is required")
    raw_base = obj["base"]
    if dimensions == 1:
        if isinstance(raw_base, list):
            raise ConfigError(
                f"{context}.base must be a single density object when dimensions=1"
            )
        bases = (_parse_base(raw_base, f"{context}.base"),)
    else:
        if not (isinstance(raw_base, list) and len(raw_base) == 2):
            raise ConfigError(
                f"{context}.base must be a list of two density objects "
                "when dimensions=2"
            )
        bases = tuple(
            _parse_base(b, f"{context}.base[{i}]") for i, b in enumerate(raw_base)
        )
    n = _as_int(obj["n"], f"{context}.n")
    if n < 1:
        raise ConfigError(f"{context}.n must be >= 1, got {n}")
    return GroupConfig(label=label.upper(), bases=bases, n=n)


def parse_config_dict(raw: Any) -> RunConfig:
    """Validate a configuration object and resolve all defaults."""
    if not isinstance(raw, dict):
        raise ConfigError("configuration root must be a JSON object")
    allowed = {
        "transform",
        "dimensions",
        "groups",
        "comparators",
        "k_values",
        "realizations",
        "seed",
        "d_exponent",
        "e_exponent",
    }
    _require_keys(raw, allowed, "the configuration")

    if "transform" not in raw:
        raise ConfigError("transform is required (pow2, square, cube, exp, identity)")
    transform_name = raw["transform"]
    try:
        Transform(transform_name)
    except (InvalidInputError, TypeError) as exc:
        raise ConfigError(f"transform: {exc}") from exc

    dimensions = _as_int(raw.get("dimensions", DEFAULTS["dimensions"]), "dimensions")
    if dimensions not in (1, 2):
        raise ConfigError(
            f"dimensions must be 1 or 2, got {dimensions} (unsupported configuration)"
        )

    groups_raw = raw.get("groups", _DEFAULT_GROUPS[dimensions])
    if not isinstance(groups_raw, dict):
        raise ConfigError("groups must be an object with keys 'a' and 'b'")
    _require_keys(groups_raw, {"a", "b"}, "groups")
    for label in ("a", "b"):
        if label not in groups_raw:
            raise ConfigError(f"groups.{label} is required when groups is given")
    group_a = _parse_group(groups_raw["a"], "a", dimensions)
    group_b = _parse_group(groups_raw["b"], "b", dimensions)

    comp_raw = raw.get("comparators", DEFAULTS["comparators"])
    if not (isinstance(comp_raw, list) and comp_raw):
        raise ConfigError("comparators must be a non-empty list")
    for name in comp_raw:
        if name not in COMPARATOR_NAMES:
            raise ConfigError(
                f"comparators entries must be one of {list(COMPARATOR_NAMES)}, "
                f"got {name!r}"
            )
    if len(set(comp_raw)) != len(comp_raw):
        raise ConfigError("comparators must not repeat")

    k_raw = raw.get("k_values", DEFAULTS["k_values"])
    if not (isinstance(k_raw, list) and k_raw):
        raise ConfigError("k_values must be a non-empty list of positive integers")
    k_values = tuple(_as_int(k, "k_values") for k in k_raw)
    pool = group_a.n + group_b.n
    for k in k_values:
        if k < 1:
            raise ConfigError(f"k_values entries must be >= 1, got {k}")
        if k > pool:
            raise ConfigError(
                f"k_values entry {k} exceeds the pooled sample size {pool}"
            )
    if len(set(k_values)) != len(k_values):
        raise ConfigError("k_values must not repeat")

    realizations = _as_int(
        raw.get("realizations", DEFAULTS["realizations"]), "realizations"
    )
    if realizations < 1:
        raise ConfigError(f"realizations must be >= 1, got {realizations}")

    seed = _as_int(raw.get("seed", DEFAULTS["seed"]), "seed")

    d_exponent = _as_real(raw.get("d_exponent", DEFAULTS["d_exponent"]), "d_exponent")
    e_exponent = _as_real(raw.get("e_exponent", DEFAULTS["e_exponent"]), "e_exponent")
    try:
        CoincidenceDissimilarity(d_exponent, e_exponent)
    except InvalidInputError as exc:
        key = "d_exponent" if "d_exponent" in str(exc) else "e_exponent"
        raise ConfigError(f"{key}: {exc}") from exc

    run = RunConfig(
        transform_name=transform_name,
        dimensions=dimensions,
        group_a=group_a,
        group_b=group_b,
        comparator_names=tuple(comp_raw),
        d_exponent=d_exponent,
        e_exponent=e_exponent,
        k_values=k_values,
        realizations=realizations,
        seed=seed,
    )
    # surface structural problems (e.g. undefined decision point) as config
    # errors so the CLI can report them before any computation
    try:
        reference_point(run.experiment())
    except (InvalidInputError, UnsupportedConfigurationError) as exc:
        raise ConfigError(f"groups: {exc}") from exc
    return run


def parse_config(path) -> RunConfig:
    """Load and validate a configuration file."""
    try:
        with open(path, "r", encoding="utf-8") as handle:
            raw = json.load(handle)
    except FileNotFoundError as exc:
        raise ConfigError(f"configuration file not found: {path}") from exc
    except json.JSONDecodeError as exc:
        raise ConfigError(f"configuration is not valid JSON: {exc}") from exc
    return parse_config_dict(raw)
