"""
Monte Carlo checks of the collision laws, the count-sketch estimator and NRFF.

Collision checks treat each hash index j as one trial. Estimator checks draw a
fresh keyed seed per trial and accumulate moments in fixed-size chunks merged in
chunk order, so a report depends on ``(seed, trials)`` and never on ``workers``.
"""

from __future__ import annotations

import logging
import math
from concurrent.futures import ThreadPoolExecutor
from typing import Callable, List, Optional, Tuple

import numpy as np

from gcwsnet.config import get_settings
from gcwsnet.core.errors import InvalidParameterError
from gcwsnet.core.kernels import pgmm_kernel
from gcwsnet.core.random import Stream, derive_seed, keyed_generator
from gcwsnet.core.vectors import SparseVector, sign_split
from gcwsnet.gcws.config import GcwsConfig
from gcwsnet.gcws.hashing import gcws_hash_raw, uniform_pair_code
from gcwsnet.nrff.features import RffConfig, nrff_estimate, rff_features
from gcwsnet.nrff.variance import nrff_variance, rbf_value
from gcwsnet.sketch.count_sketch import CountSketchConfig, count_sketch_positions
from gcwsnet.sketch.variance import (
    collision_probability,
    cs_conditional_variance,
    cs_variance,
)
from gcwsnet.validate.models import McReport, MeanCriterion
from gcwsnet.validate.moments import RunningMoments

logger = logging.getLogger(__name__)

ZERO_BIT_TOLERANCE = 0.02
MIN_COLLISION_TRIALS = 10_000
CHUNK = 1000

# Per-check tags for derive_seed so different checks never share trial seeds.
_TAG_T1, _TAG_T2, _TAG_ZERO, _TAG_CS, _TAG_CS_COND, _TAG_NRFF = range(1, 7)


def _bernoulli_se(p: float, n: int) -> float:
    p = min(max(p, 0.0), 1.0)
    return math.sqrt(p * (1.0 - p) / n)


def _shards(n: int) -> List[np.ndarray]:
    step = CHUNK * 10
    return [np.arange(s, min(s + step, n), dtype=np.int64) for s in range(0, n, step)]


def _map(fn: Callable, items: list, workers: Optional[int]) -> list:
    workers = workers or get_settings().workers
    if workers <= 1 or len(items) < 2:
        return [fn(x) for x in items]
    with ThreadPoolExecutor(max_workers=workers) as pool:
        return list(pool.map(fn, items))


def _collision_counts(
    u: SparseVector,
    v: SparseVector,
    p: float,
    trials: int,
    seed: int,
    matcher: Callable[[np.ndarray, Tuple[np.ndarray, ...], Tuple[np.ndarray, ...]], np.ndarray],
    workers: Optional[int],
) -> int:
    if trials < MIN_COLLISION_TRIALS:
        raise InvalidParameterError(f"need at least {MIN_COLLISION_TRIALS} trials, got {trials}")
    cfg = GcwsConfig.create(p=p, k=trials, b=1, seed=seed)
    tu, tv = sign_split(u), sign_split(v)

    def _count(js: np.ndarray) -> int:
        ru = gcws_hash_raw(tu, cfg, js)
        rv = gcws_hash_raw(tv, cfg, js)
        return int(np.count_nonzero(matcher(js, ru, rv)))

    return sum(_map(_count, _shards(trials), workers))


# ---------------------------------------------------------------------------
# GCWS collision laws
# ---------------------------------------------------------------------------


def check_exact_collision(
    u: SparseVector,
    v: SparseVector,
    p: float,
    trials: int = 100_000,
    seed: int = 0,
    workers: Optional[int] = None,
) -> McReport:
    """P[(i*, t*) agree] against the exact pGMM kernel."""
    theory = pgmm_kernel(u, v, p)
    hits = _collision_counts(
        u,
        v,
        p,
        trials,
        derive_seed(seed, Stream.VALIDATE, _TAG_T1),
        lambda js, a, b: (a[0] == b[0]) & (a[1] == b[1]),
        workers,
    )
    return McReport(
        name="gcws_full_collision",
        theoretical=theory,
        empirical=hits / trials,
        se=_bernoulli_se(theory, trials),
        trials=trials,
        params={"p": p},
    )


def check_bbit_collision(
    u: SparseVector,
    v: SparseVector,
    p: float,
    b: int,
    trials: int = 100_000,
    seed: int = 0,
    workers: Optional[int] = None,
) -> McReport:
    """Codes from the uniform pair map collide with probability J + (1 - J) / 2**b."""
    J = pgmm_kernel(u, v, p)
    theory = collision_probability(J, b)
    pair_seed = derive_seed(seed, Stream.VALIDATE, _TAG_T2, 1)

    def _match(js, a, c):
        return uniform_pair_code(a[0], a[1], b, pair_seed, js) == uniform_pair_code(
            c[0], c[1], b, pair_seed, js
        )

    hits = _collision_counts(
        u, v, p, trials, derive_seed(seed, Stream.VALIDATE, _TAG_T2), _match, workers
    )
    return McReport(
        name="gcws_bbit_collision",
        theoretical=theory,
        empirical=hits / trials,
        se=_bernoulli_se(theory, trials),
        trials=trials,
        params={"p": p, "b": b, "J": J},
    )


def check_zero_bit(
    u: SparseVector,
    v: SparseVector,
    p: float,
    trials: int = 100_000,
    seed: int = 0,
    tolerance: float = ZERO_BIT_TOLERANCE,
    workers: Optional[int] = None,
) -> McReport:
    """P[i* agree] against pGMM, judged by an absolute engineering tolerance."""
    theory = pgmm_kernel(u, v, p)
    hits = _collision_counts(
        u,
        v,
        p,
        trials,
        derive_seed(seed, Stream.VALIDATE, _TAG_ZERO),
        lambda js, a, b: a[0] == b[0],
        workers,
    )
    return McReport(
        name="gcws_zero_bit",
        theoretical=theory,
        empirical=hits / trials,
        se=_bernoulli_se(theory, trials),
        trials=trials,
        criterion=MeanCriterion.TOLERANCE,
        tolerance=tolerance,
        params={"p": p},
    )


# ---------------------------------------------------------------------------
# Estimator checks
# ---------------------------------------------------------------------------


def _chunked_moments(
    trials: int, one_chunk: Callable[[np.ndarray], np.ndarray], workers: Optional[int]
) -> RunningMoments:
    starts = list(range(0, trials, CHUNK))
    parts = _map(
        lambda s: RunningMoments().push(one_chunk(np.arange(s, min(s + CHUNK, trials)))),
        starts,
        workers,
    )
    total = RunningMoments()
    for part in parts:
        total.merge(part)
    return total


def sketch_width(k: int, b: int, m: float) -> int:
    """B for reduction factor m on ``k`` blocks of ``2**b``; at least one bin."""
    return max(1, int(round((2**b) * k / m)))


def check_countsketch(
    k: int,
    b: int,
    J: float,
    m: float,
    trials: int = 10_000,
    seed: int = 0,
    workers: Optional[int] = None,
) -> McReport:
    """Mean and variance of ``<z, w> / k`` over fresh codes and fresh sketches.

    Codes of the second vector copy the first with probability J and are redrawn
    uniformly otherwise, so blocks agree with probability P_b.
    """
    P_b = collision_probability(J, b)
    B = sketch_width(k, b, m)
    block = 1 << b
    offsets = np.arange(k, dtype=np.int64) * block

    def _chunk(ts: np.ndarray) -> np.ndarray:
        out = np.empty(ts.size)
        for n, t in enumerate(ts):
            rng = keyed_generator(seed, Stream.VALIDATE, _TAG_CS, int(t))
            cu = rng.integers(0, block, k)
            cv = np.where(rng.random(k) < J, cu, rng.integers(0, block, k))
            sketch_seed = derive_seed(seed, Stream.VALIDATE, _TAG_CS, int(t), 1)
            cs = CountSketchConfig(B=B, seed=sketch_seed)
            z = count_sketch_positions(cu + offsets, cs)
            w = count_sketch_positions(cv + offsets, cs)
            out[n] = np.dot(z, w) / k
        return out

    mom = _chunked_moments(trials, _chunk, workers)
    return McReport(
        name="countsketch_estimator",
        theoretical=P_b,
        empirical=mom.mean,
        se=mom.se,
        trials=trials,
        var_theoretical=cs_variance(P_b, k, B),
        var_empirical=mom.variance,
        params={"k": k, "b": b, "J": J, "m": m, "B": B},
    )


def check_countsketch_conditional(
    k: int,
    a: int,
    B: int,
    trials: int = 10_000,
    seed: int = 0,
    workers: Optional[int] = None,
) -> McReport:
    """Fixed one-hot inputs with ``a`` agreeing blocks; only the sketch is random."""
    if not 0 <= a <= k:
        raise InvalidParameterError(f"a must be in [0, k], got {a}")
    pos_u = np.arange(k, dtype=np.int64) * 2
    pos_v = pos_u + (np.arange(k) >= a)

    def _chunk(ts: np.ndarray) -> np.ndarray:
        out = np.empty(ts.size)
        for n, t in enumerate(ts):
            trial_seed = derive_seed(seed, Stream.VALIDATE, _TAG_CS_COND, int(t))
            cs = CountSketchConfig(B=B, seed=trial_seed)
            out[n] = np.dot(count_sketch_positions(pos_u, cs), count_sketch_positions(pos_v, cs))
        return out

    mom = _chunked_moments(trials, _chunk, workers)
    return McReport(
        name="countsketch_conditional",
        theoretical=float(a),
        empirical=mom.mean,
        se=mom.se,
        trials=trials,
        var_theoretical=cs_conditional_variance(a, k, B),
        var_empirical=mom.variance,
        params={"k": k, "a": a, "B": B},
    )


def unit_pair(rho: float) -> Tuple[SparseVector, SparseVector]:
    """Two unit vectors in the plane with cosine ``rho``."""
    if not -1.0 <= rho <= 1.0:
        raise InvalidParameterError(f"rho must be in [-1, 1], got {rho}")
    u = SparseVector.from_dense([1.0, 0.0])
    v = SparseVector.from_dense([rho, math.sqrt(max(0.0, 1.0 - rho * rho))])
    return u, v


def check_nrff(
    rho: float,
    gamma: float,
    k: int = 4096,
    trials: int = 10_000,
    seed: int = 0,
    workers: Optional[int] = None,
) -> McReport:
    """Normalized RFF estimator: mean vs ``exp(-gamma (1 - rho))``, k * Var vs V_n."""
    u, v = unit_pair(rho)
    v_n, _ = nrff_variance(rho, gamma)

    def _chunk(ts: np.ndarray) -> np.ndarray:
        out = np.empty(ts.size)
        for n, t in enumerate(ts):
            trial_seed = derive_seed(seed, Stream.VALIDATE, _TAG_NRFF, int(t))
            cfg = RffConfig(k=k, gamma=gamma, seed=trial_seed)
            out[n] = nrff_estimate(rff_features(u, cfg), rff_features(v, cfg))
        return out

    mom = _chunked_moments(trials, _chunk, workers)
    return McReport(
        name="nrff_estimator",
        theoretical=rbf_value(rho, gamma),
        empirical=mom.mean,
        se=mom.se,
        trials=trials,
        var_theoretical=v_n,
        var_empirical=k * mom.variance,
        params={"rho": rho, "gamma": gamma, "k": k},
    )


__all__ = [
    "ZERO_BIT_TOLERANCE",
    "check_exact_collision",
    "check_bbit_collision",
    "check_zero_bit",
    "check_countsketch",
    "check_countsketch_conditional",
    "check_nrff",
    "sketch_width",
    "unit_pair",
]
