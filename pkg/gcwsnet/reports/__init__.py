"""Validation report formatters."""

from gcwsnet.reports.json_reporter import JSONReporter
from gcwsnet.reports.text_reporter import TextReporter

__all__ = ["JSONReporter", "TextReporter"]
