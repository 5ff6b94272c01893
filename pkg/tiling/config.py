"""Runtime settings read from ``GENTRI_*`` environment variables."""

from __future__ import annotations

import os
from dataclasses import dataclass
from fractions import Fraction

ENV_PREFIX = "GENTRI_"

DEFAULT_BUDGET_NODES = 2_000_000
DEFAULT_RESTARTS = 20
DEFAULT_SAMPLES = 1000

# Thresholds from the extremal-case and absorbing arguments. They are only
# meaningful asymptotically; reports flag degeneracy when they drop below 1.
X_RULE = Fraction(1, 50)
AUX_DEGREE_RULE = Fraction(1, 10**8)


def _env_int(name: str, default: int) -> int:
    value = os.environ.get(ENV_PREFIX + name)
    if not value:
        return default
    try:
        return int(value)
    except ValueError:
        return default


def _env_str(name: str, default: str) -> str:
    return os.environ.get(ENV_PREFIX + name) or default


def _env_optional_int(name: str) -> int | None:
    value = os.environ.get(ENV_PREFIX + name)
    if not value:
        return None
    try:
        return int(value)
    except ValueError:
        return None


@dataclass(frozen=True, slots=True)
class Settings:
    budget_nodes: int = DEFAULT_BUDGET_NODES
    jobs: int = 1
    seed: int | None = None
    output_format: str = "json"
    log_level: str = "WARNING"
    restarts: int = DEFAULT_RESTARTS
    samples: int = DEFAULT_SAMPLES

    @classmethod
    def from_env(cls) -> Settings:
        return cls(
            budget_nodes=_env_int("BUDGET_NODES", DEFAULT_BUDGET_NODES),
            jobs=max(_env_int("JOBS", 1), 1),
            seed=_env_optional_int("SEED"),
            output_format=_env_str("FORMAT", "json"),
            log_level=_env_str("LOG_LEVEL", "WARNING").upper(),
            restarts=_env_int("RESTARTS", DEFAULT_RESTARTS),
            samples=_env_int("SAMPLES", DEFAULT_SAMPLES),
        )
