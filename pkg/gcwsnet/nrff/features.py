"""
Random Fourier features for the RBF kernel, with optional output normalization.

The input is scaled to unit l2 norm, projected on k keyed standard-normal
directions (generated per (j, i) on the fly, never stored), then mapped through
``sqrt(2) * cos(sqrt(gamma) * x_j + w_j)`` with ``w_j ~ Uniform(0, 2*pi)``. With
``normalize_output`` the k-vector is rescaled to norm ``sqrt(k)``, so ``<X, Y> / k``
is the normalized estimator of ``exp(-gamma * (1 - rho))``.
"""

from __future__ import annotations

import logging
import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from typing import Optional, Sequence

import numpy as np
from pydantic import Field

from gcwsnet.config import get_settings
from gcwsnet.config.base import SEED_MAX, FrozenConfig
from gcwsnet.core.errors import EmptyVectorError
from gcwsnet.core.random import Stream, keyed_normals, keyed_uniforms
from gcwsnet.core.vectors import SparseVector

logger = logging.getLogger(__name__)


class RffConfig(FrozenConfig):
    k: int = Field(ge=1)
    gamma: float = Field(gt=0, allow_inf_nan=False)
    seed: int = Field(default=0, ge=0, le=SEED_MAX)


@dataclass(frozen=True, eq=False)
class RffFeatures:
    values: np.ndarray
    normalized: bool

    def __len__(self) -> int:
        return int(self.values.size)


def _phases(cfg: RffConfig) -> np.ndarray:
    return 2.0 * math.pi * keyed_uniforms(cfg.seed, Stream.RFF_PHASE, np.arange(cfg.k))


def _project(u: SparseVector, cfg: RffConfig, phases: np.ndarray, normalize_output: bool):
    unit = u.normalized()
    js = np.arange(cfg.k, dtype=np.int64)
    directions = keyed_normals(cfg.seed, Stream.RFF_PROJECTION, js[:, None], unit.indices[None, :])
    x = directions @ unit.values
    X = math.sqrt(2.0) * np.cos(math.sqrt(cfg.gamma) * x + phases)
    if normalize_output:
        norm = np.linalg.norm(X)
        if norm == 0.0:
            raise EmptyVectorError("all Fourier features vanished")
        X = X * (math.sqrt(cfg.k) / norm)
    return X


def rff_features(
    u: SparseVector, cfg: RffConfig, normalize_output: bool = True
) -> RffFeatures:
    values = _project(u, cfg, _phases(cfg), normalize_output)
    values.setflags(write=False)
    return RffFeatures(values=values, normalized=normalize_output)


def rff_batch(
    vectors: Sequence[SparseVector],
    cfg: RffConfig,
    normalize_output: bool = True,
    workers: Optional[int] = None,
) -> np.ndarray:
    """``(n, k)`` feature matrix; rows go to indexed slots."""
    workers = workers or get_settings().workers
    phases = _phases(cfg)
    out = np.empty((len(vectors), cfg.k), dtype=np.float64)

    def _one(r: int) -> None:
        if vectors[r].nnz == 0:
            raise EmptyVectorError(row=r + 1)
        out[r] = _project(vectors[r], cfg, phases, normalize_output)

    if workers <= 1 or len(vectors) < 2:
        for r in range(len(vectors)):
            _one(r)
    else:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            list(pool.map(_one, range(len(vectors))))
    logger.info("computed %d Fourier features for %d rows", cfg.k, len(vectors))
    return out


def nrff_estimate(x, y) -> float:
    """``<x, y> / (|x| |y|)``; equals ``<x, y> / k`` on normalized features."""
    x = np.asarray(getattr(x, "values", x), dtype=np.float64)
    y = np.asarray(getattr(y, "values", y), dtype=np.float64)
    nx, ny = np.linalg.norm(x), np.linalg.norm(y)
    if nx == 0.0 or ny == 0.0:
        raise EmptyVectorError("zero feature vector")
    return float(np.dot(x, y) / (nx * ny))


__all__ = ["RffConfig", "RffFeatures", "rff_features", "rff_batch", "nrff_estimate"]
