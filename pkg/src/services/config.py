"""
Run Config Service
Engine defaults with environment overrides, plus the validated CLI run configuration
"""

import logging
import os
import sys
from pathlib import Path
from typing import Literal, Optional

from pydantic import BaseModel, Field, model_validator

logger = logging.getLogger(__name__)

# Defaults (each overridable through the matching LINKINV_* variable)
DEFAULT_TRUNCATION = 8
DEFAULT_SEED = 0
DEFAULT_TRIALS = 100
DEFAULT_LEIBNIZ_BOUND = 3
DEFAULT_CACHE_SIZE = 200_000
DEFAULT_WORKERS = 1
DEFAULT_LOG_LEVEL = "WARNING"


def _env_int(name: str, default: int, minimum: Optional[int] = None) -> int:
    """Read an integer env var, falling back to `default` when unset or invalid"""
    raw = os.getenv(name)
    if raw is None or raw.strip() == "":
        return default
    try:
        value = int(raw)
    except ValueError:
        logger.warning(f"{name}={raw!r} is not an integer, using {default}")
        return default
    if minimum is not None and value < minimum:
        logger.warning(f"{name}={value} below {minimum}, using {default}")
        return default
    return value


def get_truncation() -> int:
    return _env_int("LINKINV_TRUNCATION", DEFAULT_TRUNCATION, minimum=0)


def get_seed() -> int:
    return _env_int("LINKINV_SEED", DEFAULT_SEED)


def get_trials() -> int:
    return _env_int("LINKINV_TRIALS", DEFAULT_TRIALS, minimum=1)


def get_leibniz_bound() -> int:
    return _env_int("LINKINV_LEIBNIZ_BOUND", DEFAULT_LEIBNIZ_BOUND, minimum=0)


def get_cache_size() -> int:
    return _env_int("LINKINV_CACHE_SIZE", DEFAULT_CACHE_SIZE, minimum=0)


def get_workers() -> int:
    return _env_int("LINKINV_WORKERS", DEFAULT_WORKERS, minimum=1)


def progress_enabled() -> bool:
    """tqdm bars only on an interactive stderr, and never when LINKINV_PROGRESS=0"""
    if os.getenv("LINKINV_PROGRESS", "1") == "0":
        return False
    return sys.stderr.isatty()


def setup_logging(verbose: bool = False):
    """Structured logging on stderr; stdout is reserved for reports"""
    level_name = "INFO" if verbose else os.getenv("LINKINV_LOG_LEVEL", DEFAULT_LOG_LEVEL).upper()
    level = getattr(logging, level_name, logging.WARNING)
    logging.basicConfig(
        level=level,
        format="%(asctime)s | %(levelname)s | %(name)s | %(message)s",
        datefmt="%Y-%m-%d %H:%M:%S",
        stream=sys.stderr,
        force=True,
    )


# ============================================================================
# RUN CONFIG
# ============================================================================

class RunConfig(BaseModel):
    """One CLI invocation. The seed fully determines every randomized step."""

    command: str
    subcommand: Optional[str] = None
    pd: Optional[str] = None
    input_path: Optional[Path] = None
    corpus: Optional[str] = None
    truncation: int = Field(default_factory=get_truncation, ge=0)
    seed: int = Field(default_factory=get_seed)
    trials: int = Field(default_factory=get_trials, ge=1)
    output_format: Literal["json", "text"] = "json"
    verbose: bool = False

    # Command options
    target: Optional[str] = None
    invariant: Optional[str] = None
    components: int = Field(default=2, ge=1)
    n: Optional[int] = None
    family: Optional[str] = None
    params: Optional[str] = None
    site: Optional[str] = None
    ks: Optional[str] = None
    bound: int = Field(default_factory=get_leibniz_bound, ge=0)

    @model_validator(mode="after")
    def _single_source(self) -> "RunConfig":
        given = [s for s in (self.pd, self.input_path, self.corpus) if s is not None]
        if len(given) > 1:
            raise ValueError("give at most one of --pd, --input, --corpus")
        return self

    @property
    def has_source(self) -> bool:
        return any(s is not None for s in (self.pd, self.input_path, self.corpus))

    def read_source_text(self) -> Optional[str]:
        """PD text from --pd or --input; corpus specs are resolved by the caller"""
        if self.pd is not None:
            return self.pd
        if self.input_path is not None:
            return self.input_path.read_text(encoding="utf-8")
        return None
