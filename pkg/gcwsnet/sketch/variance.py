"""
Closed-form variances of count-sketched inner products, and the variance ratio R.

With k one-hot blocks, B bins and ±1 signs:

- conditional on a matching blocks: ``Var(<z,w> | a) = (k**2 + a**2 - 2a) / B``
- unconditionally (a ~ Binomial(k, P_b)):
  ``Var(<z,w>) = (k**2 + k**2 P_b**2 - k P_b**2 - k P_b) / B + k P_b (1 - P_b)``
- for ``P̂_b = <z,w> / k`` divide the previous line by k**2.

``R`` is the sketch term over the binomial term at k -> inf with B = 2**b k / m.
"""

from __future__ import annotations

import math
from typing import Iterable, Optional, Sequence

import numpy as np
import pandas as pd

from gcwsnet.core.errors import InvalidParameterError

STRATEGIES = ("fixed", "half_bits", "eight_bits")
RATIO_COLUMNS = ["b", "J", "m", "P_b", "R"]


def _check_prob(name: str, x: float) -> None:
    if not 0.0 <= x <= 1.0:
        raise InvalidParameterError(f"{name} must be in [0, 1], got {x}")


def _check_kB(k: float, B: float) -> None:
    if k < 1 or B < 1:
        raise InvalidParameterError(f"k and B must be >= 1, got k={k}, B={B}")


def collision_probability(J: float, b: int) -> float:
    """P_b = J + (1 - J) / 2**b."""
    _check_prob("J", J)
    return J + (1.0 - J) / 2.0**b


def cs_conditional_variance(a: int, k: int, B: float) -> float:
    _check_kB(k, B)
    if not 0 <= a <= k:
        raise InvalidParameterError(f"a must be in [0, k], got {a}")
    return (k * k + a * a - 2.0 * a) / B


def cs_inner_variance(P_b: float, k: int, B: float) -> float:
    _check_prob("P_b", P_b)
    _check_kB(k, B)
    kp = k * P_b
    return (k * k + kp * kp - kp * P_b - kp) / B + kp * (1.0 - P_b)


def cs_variance(P_b: float, k: int, B: float) -> float:
    """Variance of ``P̂_b``; ``B = inf`` leaves the binomial term alone."""
    _check_prob("P_b", P_b)
    _check_kB(k, B)
    return P_b * (1.0 - P_b) / k + (1.0 + P_b**2 - P_b**2 / k - P_b / k) / B


def cs_ratio(b: int, J: float, m: float) -> float:
    """R(b, J, m); ``inf`` where P_b is 0 or 1."""
    if m <= 0:
        raise InvalidParameterError(f"m must be positive, got {m}")
    P = collision_probability(J, b)
    denom = P * (1.0 - P)
    if denom <= 0.0:
        return math.inf
    return (m / 2.0**b) * (1.0 + P * P) / denom


def strategy_m(b: int, strategy: str, m: Optional[float] = None) -> float:
    if strategy == "fixed":
        if m is None:
            raise InvalidParameterError("the fixed strategy needs m")
        return float(m)
    if strategy == "half_bits":
        return 2.0 ** (b / 2.0)
    if strategy == "eight_bits":
        if b < 8:
            raise InvalidParameterError(f"m = 2**(b-8) needs b >= 8, got {b}")
        return 2.0 ** (b - 8)
    raise InvalidParameterError(f"unknown strategy {strategy!r}; choose from {STRATEGIES}")


def ratio_table(
    b_list: Sequence[int],
    J_grid: Iterable[float],
    m_list: Optional[Sequence[float]] = None,
    strategy: str = "fixed",
) -> pd.DataFrame:
    """Rows of (b, J, m, P_b, R) over the grids, one m per b unless ``fixed``."""
    J_grid = [float(j) for j in J_grid]
    rows = []
    for b in b_list:
        ms = list(m_list or []) if strategy == "fixed" else [strategy_m(b, strategy)]
        if not ms:
            raise InvalidParameterError("the fixed strategy needs at least one m")
        for m in ms:
            for J in J_grid:
                rows.append(
                    {
                        "b": int(b),
                        "J": J,
                        "m": float(m),
                        "P_b": collision_probability(J, b),
                        "R": cs_ratio(b, J, m),
                    }
                )
    return pd.DataFrame(rows, columns=RATIO_COLUMNS)


def j_grid(n: int = 100) -> np.ndarray:
    """Default J grid, ``n`` evenly spaced points in (0, 1]."""
    return np.linspace(1.0 / n, 1.0, n)


__all__ = [
    "STRATEGIES",
    "RATIO_COLUMNS",
    "collision_probability",
    "cs_conditional_variance",
    "cs_inner_variance",
    "cs_variance",
    "cs_ratio",
    "strategy_m",
    "ratio_table",
    "j_grid",
]
