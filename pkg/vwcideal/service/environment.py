import logging
import os
from pathlib import Path

from vwcideal.service.homology import Field


def get_homology_cap() -> int:
    return int(os.getenv("VWCIDEAL_HOMOLOGY_CAP", "16"))


def get_shelling_limit() -> int:
    return int(os.getenv("VWCIDEAL_SHELLING_LIMIT", "16"))


def get_field() -> Field:
    return Field(os.getenv("VWCIDEAL_FIELD", "gf2"))


def get_log_dir() -> Path | None:
    log_dir = os.getenv("VWCIDEAL_LOG_DIR")
    return Path(log_dir) if log_dir else None


def get_log_level() -> int:
    name = os.getenv("VWCIDEAL_LOG_LEVEL", "WARNING").upper()
    level = logging.getLevelName(name)
    if not isinstance(level, int):
        raise ValueError(f"unknown log level {name!r}")
    return level


def get_workers() -> int:
    workers = int(os.getenv("VWCIDEAL_WORKERS", "1"))
    if workers < 1:
        raise ValueError(f"VWCIDEAL_WORKERS must be positive, got {workers}")
    return workers


def get_result_dir() -> Path:
    return Path(os.getenv("VWCIDEAL_RESULT_DIR", "results"))
