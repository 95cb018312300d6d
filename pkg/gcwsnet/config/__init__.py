"""Configuration management for GCWSNet."""

from gcwsnet.config.settings import Settings, get_settings

__all__ = ["Settings", "get_settings"]
