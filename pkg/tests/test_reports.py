"""
Tests for the JSON and text report formatters.
"""

import json

from gcwsnet.reports import JSONReporter, TextReporter
from gcwsnet.validate import McReport, MeanCriterion


def sample_reports():
    return [
        McReport(
            name="gcws_full_collision",
            theoretical=0.5,
            empirical=0.503,
            se=0.0016,
            trials=100_000,
            params={"p": 1.0},
        ),
        McReport(
            name="gcws_zero_bit",
            theoretical=0.4,
            empirical=0.45,
            se=0.0016,
            trials=100_000,
            criterion=MeanCriterion.TOLERANCE,
            tolerance=0.02,
        ),
    ]


def test_json_reporter_round_trip():
    text = JSONReporter().generate(sample_reports())
    data = json.loads(text)
    assert [d["verdict"] for d in data] == ["within_se", "fail"]
    loaded = JSONReporter.load(text)
    assert [r.verdict for r in loaded] == [r.verdict for r in sample_reports()]


def test_text_reporter_lines_and_summary():
    out = TextReporter().generate(sample_reports())
    lines = out.splitlines()
    assert lines[0].startswith("[WITHIN_SE] gcws_full_collision p=1:")
    assert lines[1].startswith("[FAIL] gcws_zero_bit")
    assert lines[-1] == "2 checks: 1 within SE band, 0 within tolerance, 1 failed"
    assert "\033[" not in out


def test_text_reporter_color():
    out = TextReporter(color=True).generate(sample_reports())
    assert "\033[91m" in out
