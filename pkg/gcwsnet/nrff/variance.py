"""
Asymptotic variances of the RFF estimator of ``exp(-gamma * (1 - rho))``.

    V   = 1/2 + 1/2 * (1 - e**(-2 gamma (1 - rho)))**2
    V_n = V - 1/4 * e**(-2 gamma (1 - rho)) * (3 - e**(-4 gamma (1 - rho)))

V is for the plain estimator, V_n for the normalized one; both are k * Var.
"""

import math
from typing import Tuple

from gcwsnet.core.errors import InvalidParameterError


def rbf_value(rho: float, gamma: float) -> float:
    return math.exp(-gamma * (1.0 - rho))


def nrff_variance(rho: float, gamma: float) -> Tuple[float, float]:
    """Return ``(V_n, V)``."""
    if not -1.0 <= rho <= 1.0:
        raise InvalidParameterError(f"rho must be in [-1, 1], got {rho}")
    if not gamma > 0:
        raise InvalidParameterError(f"gamma must be positive, got {gamma}")
    e2 = math.exp(-2.0 * gamma * (1.0 - rho))
    v = 0.5 + 0.5 * (1.0 - e2) ** 2
    v_n = v - 0.25 * e2 * (3.0 - e2 * e2)
    # rounding can leave -1e-17 at rho = 1
    return max(v_n, 0.0), v


__all__ = ["rbf_value", "nrff_variance"]
