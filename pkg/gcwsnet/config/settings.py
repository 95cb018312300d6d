"""
GCWSNet Configuration Settings

Loads run-time configuration from environment variables with sensible defaults.
Algorithm parameters (p, k, b, seeds, ...) are never read from the environment;
they travel in the pydantic config models so a run manifest fully describes them.
"""

import os
from dataclasses import dataclass
from typing import Optional

_LOG_LEVELS = {"DEBUG", "INFO", "WARNING", "ERROR", "CRITICAL"}


def _safe_int(v: Optional[str], default: int, minimum: int = 1) -> int:
    try:
        return max(minimum, int(v)) if v is not None else default
    except ValueError:
        return default


@dataclass
class Settings:
    """GCWSNet configuration settings."""

    environment: str = "production"
    log_level: str = "WARNING"
    workers: int = 1
    hash_chunk: int = 4096

    @classmethod
    def from_env(cls) -> "Settings":
        """Load settings from environment variables."""
        level = os.getenv("GCWSNET_LOG_LEVEL", "WARNING").strip().upper()
        return cls(
            environment=os.getenv("GCWSNET_ENV", "production"),
            log_level=level if level in _LOG_LEVELS else "WARNING",
            workers=_safe_int(os.getenv("GCWSNET_WORKERS"), 1),
            hash_chunk=_safe_int(os.getenv("GCWSNET_HASH_CHUNK"), 4096),
        )


# Singleton instance
_settings: Optional[Settings] = None


def get_settings() -> Settings:
    """Get singleton Settings instance."""
    global _settings
    if _settings is None:
        _settings = Settings.from_env()
    return _settings
