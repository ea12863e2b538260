"""Module for the budget caps and size limits used across the package.

Defaults can be overridden three ways, in increasing priority:
environment variables (read by `Settings.from_env`), a `SettingsOverrides`
dictionary passed to `Settings.with_overrides`, or an explicit argument to
the operation itself (e.g. `is_mds(..., cap=8)`)."""

# ~ Type Checking (Pyright and MyPy) - Strict Mode
# ~ Linting - Ruff
# ~ Formatting - Black - max 110 characters / line

# Python imports
from __future__ import annotations
from dataclasses import dataclass, fields, replace
from typing import Mapping, TypedDict
import logging
import os

# Local imports
from recursive_mds.errors import ParameterError

__all__ = [
    "Settings",
    "SettingsOverrides",
    "ENV_PREFIX",
    "get_settings",
    "set_settings",
]

log = logging.getLogger(__name__)

ENV_PREFIX = "RECURSIVE_MDS_"

# Maps each settings field to the suffix of its environment variable.
_ENV_NAMES: dict[str, str] = {
    "exhaustive_mds_cap": "EXHAUSTIVE_CAP",
    "distance_budget": "DISTANCE_BUDGET",
    "oracle_budget": "ORACLE_BUDGET",
    "oracle_checkpoint_interval": "CHECKPOINT_INTERVAL",
    "sampled_minor_budget": "SAMPLED_BUDGET",
    "max_symbol_bits": "MAX_SYMBOL_BITS",
    "max_extension_bits": "MAX_EXTENSION_BITS",
}


class SettingsOverrides(TypedDict, total=False):
    """A dictionary of settings overrides.

    Any key left out keeps the value of the settings it is applied to."""

    exhaustive_mds_cap: int
    distance_budget: int
    oracle_budget: int
    oracle_checkpoint_interval: int
    sampled_minor_budget: int
    max_symbol_bits: int
    max_extension_bits: int


@dataclass(frozen=True)
class Settings:
    """Budget caps. Immutable, so one instance can be shared by every worker."""

    exhaustive_mds_cap: int = 12
    "Largest k for which `is_mds` enumerates every minor."
    distance_budget: int = 1 << 24
    "Largest number of messages `min_distance_bruteforce` will enumerate."
    oracle_budget: int = 1 << 24
    "Largest number of companion candidates the oracle will scan."
    oracle_checkpoint_interval: int = 1 << 16
    "Candidates per oracle chunk; a checkpoint is written after each chunk."
    sampled_minor_budget: int = 2000
    "Random intermediate minors checked by sampled MDS verification."
    max_symbol_bits: int = 16
    "Largest supported s."
    max_extension_bits: int = 64
    "Largest s*m for which the incremental and scratch search paths build GF(q^m)."

    def __post_init__(self) -> None:

        for f in fields(self):
            value = getattr(self, f.name)
            if not isinstance(value, int) or value < 1:
                raise ParameterError(f"Setting '{f.name}' must be a positive integer, got {value!r}.")

    @classmethod
    def from_env(cls, environ: Mapping[str, str] | None = None) -> Settings:
        """Build settings from `RECURSIVE_MDS_*` environment variables."""

        environ = os.environ if environ is None else environ
        overrides: dict[str, int] = {}
        for field_name, suffix in _ENV_NAMES.items():
            raw = environ.get(ENV_PREFIX + suffix)
            if raw is None:
                continue
            try:
                overrides[field_name] = int(raw, 0)
            except ValueError as e:
                raise ParameterError(f"Environment variable {ENV_PREFIX + suffix}={raw!r} is not an integer.") from e
            log.debug(f"func from_env: {field_name} overridden to {overrides[field_name]}.")
        return cls(**overrides)

    def with_overrides(self, overrides: SettingsOverrides | None) -> Settings:
        """Return a copy with the given fields replaced."""

        if not overrides:
            return self
        return replace(self, **overrides)


_settings: Settings | None = None


def get_settings() -> Settings:
    """Get the process-wide settings, reading the environment on first use."""

    global _settings
    if _settings is None:
        _settings = Settings.from_env()
    return _settings


def set_settings(settings: Settings | None) -> None:
    """Replace the process-wide settings. `None` re-reads the environment on next use."""

    global _settings
    _settings = settings
