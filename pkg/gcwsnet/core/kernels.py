"""
Exact kernel evaluation: GMM / pGMM, cosine and RBF.

pGMM is evaluated on the sign-split vectors in log space. Every nonzero weight
becomes ``p * log(value)``; sums of ``exp`` are taken after factoring out the
largest exponent, so p = 80 on values of 1e6 never overflows.
"""

from __future__ import annotations

import math

import numpy as np

from gcwsnet.core.errors import EmptyVectorError, InvalidParameterError
from gcwsnet.core.vectors import SparseVector, sign_split


def _check_p(p: float) -> float:
    p = float(p)
    if p == 0.0 or not math.isfinite(p):
        raise InvalidParameterError(f"p must be finite and nonzero, got {p}")
    return p


def _aligned_log_weights(u: SparseVector, v: SparseVector, p: float):
    """Log weights of both sign-split vectors over their union support.

    Missing coordinates are ``-inf`` (weight zero, whatever the sign of p).
    """
    tu, tv = sign_split(u), sign_split(v)
    if tu.dim != tv.dim:
        raise InvalidParameterError(f"dimension mismatch: {u.dim} vs {v.dim}")
    support = np.union1d(tu.indices, tv.indices)
    lu = np.full(support.size, -np.inf)
    lv = np.full(support.size, -np.inf)
    lu[np.searchsorted(support, tu.indices)] = p * np.log(tu.values)
    lv[np.searchsorted(support, tv.indices)] = p * np.log(tv.values)
    return lu, lv


def pgmm_kernel(u: SparseVector, v: SparseVector, p: float) -> float:
    """Powered generalized min-max kernel.

    ``sum_i min(w_u,i, w_v,i) / sum_i max(w_u,i, w_v,i)`` with ``w = ũ**p`` on the
    nonzero entries of the sign-split vectors (zeros stay zero).
    """
    p = _check_p(p)
    lu, lv = _aligned_log_weights(u, v, p)
    lmin = np.minimum(lu, lv)
    lmax = np.maximum(lu, lv)
    top = lmax.max()
    den = np.exp(lmax - top).sum()
    num = np.exp(lmin - top).sum()
    return float(min(1.0, num / den))


def gmm_kernel(u: SparseVector, v: SparseVector) -> float:
    return pgmm_kernel(u, v, 1.0)


def gmm_correlation_limit(rho: float) -> float:
    """Limit of GMM for bivariate data with correlation ``rho`` (sanity curve only)."""
    s = math.sqrt((1.0 - rho) / 2.0)
    return (1.0 - s) / (1.0 + s)


def jaccard(u: SparseVector, v: SparseVector) -> float:
    """Resemblance of the supports."""
    inter = np.intersect1d(u.indices, v.indices, assume_unique=True).size
    union = np.union1d(u.indices, v.indices).size
    if union == 0:
        raise EmptyVectorError()
    return inter / union


def cosine(u: SparseVector, v: SparseVector) -> float:
    nu, nv = u.l2_norm(), v.l2_norm()
    if nu == 0.0 or nv == 0.0:
        raise EmptyVectorError("zero-norm vector")
    _, iu, iv = np.intersect1d(u.indices, v.indices, assume_unique=True, return_indices=True)
    dot = float(np.dot(u.values[iu], v.values[iv]))
    return max(-1.0, min(1.0, dot / (nu * nv)))


def rbf_kernel(u: SparseVector, v: SparseVector, gamma: float) -> float:
    """``exp(-gamma * (1 - rho))`` on l2-normalized inputs."""
    if not gamma > 0:
        raise InvalidParameterError(f"gamma must be positive, got {gamma}")
    return math.exp(-gamma * (1.0 - cosine(u, v)))


__all__ = [
    "pgmm_kernel",
    "gmm_kernel",
    "gmm_correlation_limit",
    "jaccard",
    "cosine",
    "rbf_kernel",
]
