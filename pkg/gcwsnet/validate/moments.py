"""
Mergeable running mean / variance.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np


@dataclass
class RunningMoments:
    """Count, mean and sum of squared deviations (Chan et al. pairwise update)."""

    count: int = 0
    mean: float = 0.0
    m2: float = 0.0

    def push(self, values) -> "RunningMoments":
        values = np.asarray(values, dtype=np.float64).ravel()
        if values.size:
            batch = RunningMoments(
                count=int(values.size),
                mean=float(values.mean()),
                m2=float(((values - values.mean()) ** 2).sum()),
            )
            self.merge(batch)
        return self

    def merge(self, other: "RunningMoments") -> "RunningMoments":
        if other.count == 0:
            return self
        if self.count == 0:
            self.count, self.mean, self.m2 = other.count, other.mean, other.m2
            return self
        n = self.count + other.count
        delta = other.mean - self.mean
        self.mean += delta * other.count / n
        self.m2 += other.m2 + delta * delta * self.count * other.count / n
        self.count = n
        return self

    @property
    def variance(self) -> float:
        """Unbiased sample variance (0 with fewer than two values)."""
        return self.m2 / (self.count - 1) if self.count > 1 else 0.0

    @property
    def se(self) -> float:
        """Standard error of the mean."""
        return math.sqrt(self.variance / self.count) if self.count else float("nan")


__all__ = ["RunningMoments"]
