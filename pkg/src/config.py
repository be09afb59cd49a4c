import os
from typing import Dict, Any
from dotenv import load_dotenv

from .exceptions import ConfigError

ENV_FILE = ".env"

MIN_JET_ORDER = 3
MIN_CLASSIFY_ORDER = 5


def _env_int(name: str, default: str) -> int:
    raw = os.getenv(name, default)
    try:
        return int(raw)
    except ValueError as e:
        raise ConfigError(f"{name} must be an integer, got '{raw}'") from e


def _env_float(name: str, default: str) -> float:
    raw = os.getenv(name, default)
    try:
        return float(raw)
    except ValueError as e:
        raise ConfigError(f"{name} must be a number, got '{raw}'") from e


def get_config() -> Dict[str, Any]:
    """Load configuration from environment variables.

    Returns:
        Dict containing configuration values

    Raises:
        ConfigError: If a value cannot be cast or is out of range
    """
    # Load environment variables from .env
    load_dotenv(ENV_FILE)

    config = {
        "jet_order": _env_int("DARBOUX_JET_ORDER", "7"),
        "causal_tol": _env_float("DARBOUX_CAUSAL_TOL", "1e-9"),
        "domain_threshold": _env_float("DARBOUX_DOMAIN_THRESHOLD", "1e-10"),
        "quad_tol": _env_float("DARBOUX_QUAD_TOL", "1e-12"),

        # Sampling
        "grid_samples": _env_int("DARBOUX_GRID_SAMPLES", "2048"),
        "spacelike_grid": _env_int("DARBOUX_SPACELIKE_GRID", "64"),
        "parallel_workers": _env_int("DARBOUX_WORKERS", "4"),

        "log_level": os.getenv("DARBOUX_LOG_LEVEL", "INFO").upper(),
    }

    if config["jet_order"] < MIN_JET_ORDER:
        raise ConfigError(f"DARBOUX_JET_ORDER must be >= {MIN_JET_ORDER}, got {config['jet_order']}")
    if config["grid_samples"] < 2:
        raise ConfigError("DARBOUX_GRID_SAMPLES must be >= 2")
    if config["parallel_workers"] < 1:
        raise ConfigError("DARBOUX_WORKERS must be >= 1")

    return config
