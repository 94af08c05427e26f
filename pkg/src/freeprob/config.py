"""Run configuration: ``key = value`` files merged over built-in defaults."""

import os
from dataclasses import dataclass, field
from pathlib import Path

__all__ = ["RunConfig", "DEFAULTS", "load_config", "config_from_env", "ConfigError"]

ENV_VAR = "FREEPROB_CONFIG"

DEFAULTS = {
    "quadrature.tol": 1e-12,
    "series.tol": 1e-10,
    "series.max_terms": 1_000_000,
    "newton.max_iter": 100,
    "grid.points": 400,
    "grid.xmax": 50.0,
    "contour.radius": 20.0,
    "psd.rel_tol": 1e-9,
}
INTEGER_KEYS = {"series.max_terms", "newton.max_iter", "grid.points"}


class ConfigError(ValueError):
    pass


def _validate(key, value, where=""):
    if key not in DEFAULTS:
        known = ", ".join(sorted(DEFAULTS))
        raise ConfigError(f"{where}unknown key {key!r}; known keys: {known}")
    if key in INTEGER_KEYS:
        if float(value) != int(float(value)):
            raise ConfigError(f"{where}{key} must be an integer, got {value!r}")
        value = int(float(value))
    else:
        value = float(value)
    if not value > 0:
        raise ConfigError(f"{where}{key} must be positive, got {value!r}")
    return value


@dataclass(frozen=True)
class RunConfig:
    """Tolerances and truncation caps, plus output format and path."""

    values: dict = field(default_factory=lambda: dict(DEFAULTS))
    output_format: str = "csv"
    output_path: str = None
    source: str = None

    def __post_init__(self):
        merged = dict(DEFAULTS)
        for k, v in self.values.items():
            merged[k] = _validate(k, v)
        object.__setattr__(self, "values", merged)
        if self.output_format not in ("csv", "json"):
            raise ConfigError(f"output format must be csv or json, got {self.output_format!r}")

    def __getitem__(self, key):
        return self.values[key]

    def overrides(self):
        return {k: v for k, v in self.values.items() if v != DEFAULTS[k]}

    def to_dict(self):
        return {"values": dict(sorted(self.values.items())), "source": self.source}


def load_config(path):
    """Parse a ``key = value`` file (``#`` comments allowed) into a :class:`RunConfig`."""
    values = {}
    text = Path(path).read_text()
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        key, sep, value = line.partition("=")
        key, value = key.strip(), value.strip()
        if not sep or not key or not value:
            raise ConfigError(f"{path}:{lineno}: expected 'key = value', got {raw.strip()!r}")
        try:
            values[key] = _validate(key, value, f"{path}:{lineno}: ")
        except ValueError as exc:
            if isinstance(exc, ConfigError):
                raise
            raise ConfigError(f"{path}:{lineno}: {key} is not a number: {value!r}") from None
    return RunConfig(values, source=str(path))


def config_from_env():
    path = os.environ.get(ENV_VAR)
    return load_config(path) if path else RunConfig()
