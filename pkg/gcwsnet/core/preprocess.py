"""
Scalar preprocessors applied to sign-split data: power and log-power.

These are the two "obvious" alternatives to GCWS for applying a power
transformation. ``power_transform`` overflows for large p on large values and
reports it; ``logpower_transform`` maps v to p*log(v) with zeros kept at zero.
"""

from __future__ import annotations

import math
from typing import Optional

import numpy as np

from gcwsnet.core.errors import InvalidParameterError, PowerOverflowError
from gcwsnet.core.vectors import SparseVector


def _check(u: SparseVector, p: float) -> float:
    p = float(p)
    if p == 0.0 or not math.isfinite(p):
        raise InvalidParameterError(f"p must be finite and nonzero, got {p}")
    if u.nnz and u.values.min() <= 0:
        raise InvalidParameterError("power preprocessing expects positive (sign-split) values")
    return p


def power_transform(u: SparseVector, p: float, row: Optional[int] = None) -> SparseVector:
    """Each nonzero value v becomes v**p."""
    p = _check(u, p)
    with np.errstate(over="ignore", under="ignore"):
        out = np.power(u.values, p)
    if not np.all(np.isfinite(out)):
        worst = float(u.values.max() if p > 0 else u.values.min())
        raise PowerOverflowError(f"{worst!r}**{p!r} exceeds the float64 range", row=row)
    # Underflow to 0 drops the entry, consistent with implicit zeros.
    return SparseVector(u.dim, u.indices, out)


def logpower_transform(u: SparseVector, p: float) -> SparseVector:
    """Each nonzero value v becomes p*log(v); zeros stay zero (0*log 0 := 0)."""
    p = _check(u, p)
    return SparseVector(u.dim, u.indices, p * np.log(u.values))


__all__ = ["power_transform", "logpower_transform"]
