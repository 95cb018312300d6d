"""
Text Reporter for Terminal Output

One line per Monte Carlo report, then a verdict summary.
"""

from typing import Sequence

from gcwsnet.validate.models import SE_BAND, McReport, MeanCriterion, Verdict, summarize


class TextReporter:
    """Generates formatted text reports for terminal display."""

    COLORS = {
        Verdict.PASS_SE: "\033[92m",  # Green
        Verdict.PASS_TOLERANCE: "\033[94m",  # Blue
        Verdict.FAIL: "\033[91m",  # Red
        "RESET": "\033[0m",
    }

    def __init__(self, color: bool = False):
        self.color = color

    def generate(self, reports: Sequence[McReport]) -> str:
        lines = [self._format_report(r) for r in reports]
        lines.append("")
        lines.append(self._format_summary(reports))
        return "\n".join(lines)

    def _tag(self, verdict: Verdict) -> str:
        text = verdict.value.upper()
        if not self.color:
            return text
        return f"{self.COLORS[verdict]}{text}{self.COLORS['RESET']}"

    def _format_report(self, r: McReport) -> str:
        params = " ".join(f"{k}={v:g}" if isinstance(v, float) else f"{k}={v}"
                          for k, v in r.params.items())
        line = (
            f"[{self._tag(r.verdict)}] {r.name} {params}: "
            f"theory={r.theoretical:.6f} empirical={r.empirical:.6f} "
            f"se={r.se:.2e} n={r.trials}"
        )
        if r.criterion == MeanCriterion.SE and r.se_band != SE_BAND:
            line += f" band={r.se_band:.2f}"
        if r.var_theoretical is not None:
            line += f" var_theory={r.var_theoretical:.4e} var_empirical={r.var_empirical:.4e}"
        return line

    def _format_summary(self, reports: Sequence[McReport]) -> str:
        counts = summarize(list(reports))
        return (
            f"{counts['total']} checks: {counts[Verdict.PASS_SE.value]} within SE band, "
            f"{counts[Verdict.PASS_TOLERANCE.value]} within tolerance, "
            f"{counts[Verdict.FAIL.value]} failed"
        )


__all__ = ["TextReporter"]
