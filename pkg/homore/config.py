# homore/config.py
import logging
import sys

from pydantic import Field
from pydantic_settings import BaseSettings, SettingsConfigDict


class Settings(BaseSettings):
    # Property runs: how many random samples and how large they get
    samples: int = Field(default=100, ge=1)
    degree_bound: int = Field(default=5, ge=0)
    seed: int = 0

    # Context validation for O[Y] stops at this Y-degree
    weyl_validation_degree: int = Field(default=8, ge=1)

    # pi_bruteforce enumerates C(m, i) words; refuse beyond this m
    pi_bruteforce_limit: int = Field(default=12, ge=0)
    pi_cache_size: int = Field(default=4096, ge=0)

    log_level: str = "WARNING"
    port: int = 8080

    model_config = SettingsConfigDict(
        env_prefix="HOMORE_",
        env_file=".env",
        env_file_encoding="utf-8",
        case_sensitive=False,
        extra="ignore",
    )


# Singleton settings instance
settings = Settings()


def configure_logging(level: str | None = None) -> logging.Logger:
    """Route the package logger to the current stderr; results stay on stdout."""
    logger = logging.getLogger("homore")
    logger.setLevel((level or settings.log_level).upper())
    for old in [h for h in logger.handlers if getattr(h, "_homore", False)]:
        logger.removeHandler(old)
    handler = logging.StreamHandler(sys.stderr)
    handler.setFormatter(logging.Formatter("%(levelname)s %(name)s: %(message)s"))
    handler._homore = True
    logger.addHandler(handler)
    logger.propagate = False
    return logger
