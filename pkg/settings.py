#!/usr/bin/env python3
"""
Settings Module

Default budgets and the run configuration shared by the command line and the
property suites. Values come from the built-in defaults, then the environment
(a local .env file is loaded first), then explicit overrides.
"""

from __future__ import annotations

import logging
import os
from dataclasses import dataclass
from typing import Any, Optional

from dotenv import load_dotenv
from sympy import isprime

from errors import BudgetError

logger = logging.getLogger("modp.settings")

DEFAULT_PRECISION = 60
DEFAULT_DEPTH = 8
DEFAULT_LEVEL = 3
DEFAULT_SAMPLES = 100
DEFAULT_SEED = 0
DEFAULT_FIELD_DEGREE = 2
DEFAULT_WORKERS = 1
DEFAULT_LOG_LEVEL = "WARNING"
LOG_FORMAT = "%(asctime)s %(name)s %(levelname)s %(message)s"

PRECISION_RANGE = (1, 4096)
DEPTH_RANGE = (1, 64)
LEVEL_RANGE = (0, 6)
SAMPLES_RANGE = (1, 10000)

SUITES = ("series", "tower", "amice", "reps", "corresp")

ENV_KEYS = {
    "precision": "MODP_PRECISION",
    "depth": "MODP_DEPTH",
    "level": "MODP_LEVEL",
    "samples": "MODP_SAMPLES",
    "seed": "MODP_SEED",
    "workers": "MODP_WORKERS",
    "log_level": "MODP_LOG_LEVEL",
}

load_dotenv()


@dataclass(frozen=True)
class RunConfig:
    p: int = 5
    m: int = DEFAULT_FIELD_DEGREE
    precision: int = DEFAULT_PRECISION
    depth: int = DEFAULT_DEPTH
    level: int = DEFAULT_LEVEL
    seed: int = DEFAULT_SEED
    samples: int = DEFAULT_SAMPLES
    workers: int = DEFAULT_WORKERS
    suites: tuple[str, ...] = SUITES


def get_setting(key: str, default: Optional[str] = None) -> Optional[str]:
    """Get a setting value from the environment.

    Args:
        key: Setting name (a key of ENV_KEYS)
        default: Default value if the variable is unset

    Returns:
        Setting value or default
    """
    return os.environ.get(ENV_KEYS.get(key, key), default)


def _int_setting(key: str, default: int) -> int:
    raw = get_setting(key)
    if raw is None or raw == "":
        return default
    try:
        return int(raw)
    except ValueError as exc:
        raise BudgetError(f"{ENV_KEYS[key]} must be an integer, got {raw!r}") from exc


def _check_range(name: str, value: int, bounds: tuple[int, int]):
    low, high = bounds
    if not low <= value <= high:
        raise BudgetError(f"{name} must lie in {low}..{high}, got {value}")


def resolve_suites(names: Optional[list[str] | tuple[str, ...] | str]) -> tuple[str, ...]:
    """Expand suite selectors; "all" means every suite."""
    if names is None:
        return SUITES
    if isinstance(names, str):
        names = [names]
    resolved: list[str] = []
    for name in names:
        if name == "all":
            resolved.extend(suite for suite in SUITES if suite not in resolved)
        elif name in SUITES:
            if name not in resolved:
                resolved.append(name)
        else:
            raise BudgetError(f"Unknown suite {name!r}; choose from {', '.join(SUITES)} or all")
    return tuple(resolved)


def validate_run_config(config: RunConfig) -> RunConfig:
    """Check a run configuration against the documented budgets.

    Args:
        config: Configuration to validate

    Returns:
        The same configuration

    Raises:
        BudgetError: when p is not prime or a budget is out of range
    """
    if not isprime(config.p):
        raise BudgetError(f"p must be prime, got {config.p}")
    if config.m not in (1, 2):
        raise BudgetError(f"The coefficient field degree must be 1 or 2, got {config.m}")
    _check_range("precision", config.precision, PRECISION_RANGE)
    _check_range("depth", config.depth, DEPTH_RANGE)
    _check_range("level", config.level, LEVEL_RANGE)
    _check_range("samples", config.samples, SAMPLES_RANGE)
    if config.workers < 1:
        raise BudgetError(f"workers must be at least 1, got {config.workers}")
    resolve_suites(config.suites)
    return config


def get_run_config(**overrides: Any) -> RunConfig:
    """Build the run configuration: defaults, then environment, then overrides.

    Args:
        **overrides: RunConfig fields; None values are ignored

    Returns:
        A validated RunConfig
    """
    values: dict[str, Any] = {
        "precision": _int_setting("precision", DEFAULT_PRECISION),
        "depth": _int_setting("depth", DEFAULT_DEPTH),
        "level": _int_setting("level", DEFAULT_LEVEL),
        "samples": _int_setting("samples", DEFAULT_SAMPLES),
        "seed": _int_setting("seed", DEFAULT_SEED),
        "workers": _int_setting("workers", DEFAULT_WORKERS),
    }
    values.update({key: value for key, value in overrides.items() if value is not None})
    if "suites" in values:
        values["suites"] = resolve_suites(values["suites"])
    config = validate_run_config(RunConfig(**values))
    logger.debug(f"Run configuration: {config}")
    return config


def configure_logging(level: Optional[str] = None):
    """Configure the root logger once, from the flag or MODP_LOG_LEVEL.

    Args:
        level: Level name such as "INFO"; defaults to the environment setting
    """
    name = (level or get_setting("log_level", DEFAULT_LOG_LEVEL)).upper()
    numeric = logging.getLevelName(name)
    if not isinstance(numeric, int):
        raise BudgetError(f"Unknown log level {name!r}")
    logging.basicConfig(level=numeric, format=LOG_FORMAT)
    logging.getLogger().setLevel(numeric)
