"""CLI interface for GCWSNET."""

from gcwsnet.cli.main import cli

__all__ = ["cli"]
