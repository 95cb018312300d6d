"""
Monte Carlo report model.

A report stores the numbers a verdict is made from and nothing else; ``verdict``
is recomputed from them on every access, so a report read back from JSON judges
itself the same way.

A single check passes its mean within ``SE_BAND`` standard errors. A suite of n
SE-judged checks widens the band to the Bonferroni bound ``family_se_band(n)``,
which keeps the chance of any false failure across the suite at the
single-check rate of a 3 SE band.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from enum import Enum
from typing import Any, Dict, List, Optional

from scipy.stats import norm

SE_BAND = 3.0
FAMILY_ALPHA = 2.0 * float(norm.sf(SE_BAND))
VARIANCE_REL_TOL = 0.15
ZERO_VARIANCE_ABS_TOL = 1e-12
_SLACK = 1e-12


class Verdict(str, Enum):
    PASS_SE = "within_se"
    PASS_TOLERANCE = "within_tolerance"
    FAIL = "fail"


class MeanCriterion(str, Enum):
    SE = "se"
    TOLERANCE = "tolerance"


@dataclass(frozen=True)
class McReport:
    """Empirical mean against theory, optionally with a variance comparison."""

    name: str
    theoretical: float
    empirical: float
    se: float
    trials: int
    criterion: MeanCriterion = MeanCriterion.SE
    tolerance: Optional[float] = None
    var_theoretical: Optional[float] = None
    var_empirical: Optional[float] = None
    var_rel_tol: float = VARIANCE_REL_TOL
    params: Dict[str, Any] = field(default_factory=dict)
    se_band: float = SE_BAND

    @property
    def mean_ok(self) -> bool:
        diff = abs(self.empirical - self.theoretical)
        if self.criterion == MeanCriterion.TOLERANCE:
            return diff <= (self.tolerance or 0.0) + _SLACK
        return diff <= self.se_band * self.se + _SLACK

    @property
    def variance_ok(self) -> bool:
        if self.var_theoretical is None:
            return True
        if self.var_empirical is None:
            return False
        if self.var_theoretical == 0.0:
            return abs(self.var_empirical) <= ZERO_VARIANCE_ABS_TOL
        return (
            abs(self.var_empirical - self.var_theoretical) / self.var_theoretical
            <= self.var_rel_tol
        )

    @property
    def verdict(self) -> Verdict:
        if not (self.mean_ok and self.variance_ok):
            return Verdict.FAIL
        if self.criterion == MeanCriterion.TOLERANCE or self.var_theoretical is not None:
            return Verdict.PASS_TOLERANCE
        return Verdict.PASS_SE

    @property
    def passed(self) -> bool:
        return self.verdict != Verdict.FAIL

    def to_dict(self) -> Dict[str, Any]:
        return {
            "name": self.name,
            "theoretical": self.theoretical,
            "empirical": self.empirical,
            "se": self.se,
            "se_band": self.se_band,
            "trials": self.trials,
            "criterion": self.criterion.value,
            "tolerance": self.tolerance,
            "var_theoretical": self.var_theoretical,
            "var_empirical": self.var_empirical,
            "var_rel_tol": self.var_rel_tol,
            "params": dict(self.params),
            "verdict": self.verdict.value,
        }

    @classmethod
    def from_dict(cls, data: Dict[str, Any]) -> "McReport":
        fields = {k: v for k, v in data.items() if k != "verdict"}
        fields["criterion"] = MeanCriterion(fields.get("criterion", "se"))
        return cls(**fields)


def family_se_band(n: int, alpha: float = FAMILY_ALPHA) -> float:
    """SE band for n simultaneous checks with family-wise false-failure rate alpha."""
    if n <= 1:
        return SE_BAND
    return max(SE_BAND, float(norm.isf(alpha / (2.0 * n))))


def summarize(reports: List[McReport]) -> Dict[str, int]:
    counts = {v.value: 0 for v in Verdict}
    for r in reports:
        counts[r.verdict.value] += 1
    counts["total"] = len(reports)
    return counts


__all__ = [
    "Verdict",
    "MeanCriterion",
    "McReport",
    "summarize",
    "family_se_band",
    "SE_BAND",
    "FAMILY_ALPHA",
    "VARIANCE_REL_TOL",
]
