"""
Generalized consistent weighted sampling.

For every nonzero coordinate i of the sign-split vector and hash index j, with
(r, c, beta) drawn from the keyed stream for (seed, j, i)::

    t_i = floor(p * log(u_i) / r + beta)
    a_i = log(c) - r * (t_i + 1 - beta)

the sample is ``(i*, t*) = (argmin_i a_i, t_{i*})``. Only ``p * log(u_i)`` is ever
formed, so p = 80 on large values is as safe as p = 1. Many hash indices are
evaluated at once as a ``(chunk, nnz)`` block.
"""

from __future__ import annotations

import logging
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from typing import Optional, Sequence, Tuple

import numpy as np

from gcwsnet.config import get_settings
from gcwsnet.core.errors import EmptyVectorError, InvalidParameterError
from gcwsnet.core.random import Stream, gamma21_uniforms, keyed_bits, keyed_state
from gcwsnet.core.vectors import SparseVector, TransformedVector, sign_split
from gcwsnet.gcws.config import GcwsConfig

logger = logging.getLogger(__name__)

_I64_MAX = float(np.iinfo(np.int64).max)


@dataclass(frozen=True)
class HashSample:
    """One GCWS output: the raw pair and its encoded code."""

    istar: int
    tstar: int
    code: int

    @property
    def pair(self) -> Tuple[int, int]:
        return (self.istar, self.tstar)


@dataclass(frozen=True, eq=False)
class HashedVector:
    """k codes, one per hash index j = 0..k-1."""

    codes: np.ndarray
    config: GcwsConfig

    def __len__(self) -> int:
        return int(self.codes.size)

    def __eq__(self, other) -> bool:
        if not isinstance(other, HashedVector):
            return NotImplemented
        return self.config == other.config and np.array_equal(self.codes, other.codes)

    def to_list(self):
        return self.codes.tolist()


# ---------------------------------------------------------------------------
# Raw samples
# ---------------------------------------------------------------------------


def _sample_block(
    coords: np.ndarray, plog: np.ndarray, seed: int, js: np.ndarray
) -> Tuple[np.ndarray, np.ndarray]:
    state = keyed_state(seed, Stream.GCWS, js[:, None], coords[None, :])
    r, c, beta = gamma21_uniforms(state)
    t = np.floor(plog[None, :] / r + beta)
    a = np.log(c) - r * (t + 1.0 - beta)
    # coords are ascending, so argmin's first-occurrence rule picks the smallest index
    arg = np.argmin(a, axis=1)
    rows = np.arange(js.size)
    tstar = np.clip(t[rows, arg], -_I64_MAX, _I64_MAX).astype(np.int64)
    return coords[arg], tstar


def gcws_hash_raw(
    u: TransformedVector,
    cfg: GcwsConfig,
    hash_indices: Optional[Sequence[int]] = None,
    chunk: Optional[int] = None,
) -> Tuple[np.ndarray, np.ndarray]:
    """``(istar, tstar)`` arrays for the given hash indices (default ``0..k-1``)."""
    if not isinstance(u, TransformedVector):
        raise InvalidParameterError("gcws_hash_raw expects a sign-split vector")
    u.require_nonzero()
    js = (
        np.arange(cfg.k, dtype=np.int64)
        if hash_indices is None
        else np.asarray(hash_indices, dtype=np.int64).ravel()
    )
    chunk = chunk or get_settings().hash_chunk
    plog = cfg.p * np.log(u.values)
    istar = np.empty(js.size, dtype=np.int64)
    tstar = np.empty(js.size, dtype=np.int64)
    for start in range(0, js.size, chunk):
        block = js[start : start + chunk]
        istar[start : start + block.size], tstar[start : start + block.size] = _sample_block(
            u.indices, plog, cfg.seed, block
        )
    return istar, tstar


def gcws_hash_one(u: TransformedVector, cfg: GcwsConfig, j: int) -> HashSample:
    istar, tstar = gcws_hash_raw(u, cfg, [j])
    i, t = int(istar[0]), int(tstar[0])
    return HashSample(istar=i, tstar=t, code=encode_code(i, t, cfg))


# ---------------------------------------------------------------------------
# Codes
# ---------------------------------------------------------------------------


def encode_code(istar: int, tstar: int, cfg: GcwsConfig) -> int:
    """Lowest b bits of i*, then (optionally) the lowest tbits bits of t* above them.

    Python's ``%`` is already the nonnegative remainder for a positive modulus.
    """
    code = int(istar) % (1 << cfg.b)
    if cfg.tbits:
        code += (1 << cfg.b) * (int(tstar) % (1 << cfg.tbits))
    return code


def encode_codes(istar: np.ndarray, tstar: np.ndarray, cfg: GcwsConfig) -> np.ndarray:
    """Vectorized ``encode_code``; ``np.mod`` takes the sign of the divisor."""
    codes = np.mod(np.asarray(istar, dtype=np.int64), np.int64(1 << cfg.b))
    if cfg.tbits:
        codes = codes + np.int64(1 << cfg.b) * np.mod(
            np.asarray(tstar, dtype=np.int64), np.int64(1 << cfg.tbits)
        )
    return codes


def uniform_pair_code(istar, tstar, b: int, seed: int, j=None):
    """Keyed avalanche map of the full ``(i*, t*)`` pair onto b bits.

    Passing the hash index ``j`` gives every hash its own independent map.
    Scalars in, int out; arrays in, array out.
    """
    if not 1 <= int(b) <= 64:
        raise InvalidParameterError(f"b must be in [1, 64], got {b}")
    if j is None:
        bits = keyed_bits(seed, Stream.PAIR_CODE, istar, tstar)
    else:
        bits = keyed_bits(seed, Stream.PAIR_CODE, j, istar, tstar)
    code = bits >> np.uint64(64 - int(b))
    if np.ndim(code) == 0:
        return int(code)
    return code.astype(np.int64)


# ---------------------------------------------------------------------------
# Vectors and batches
# ---------------------------------------------------------------------------


def gcws_hash(u: SparseVector, cfg: GcwsConfig) -> HashedVector:
    """Sign-split, hash k times and encode."""
    istar, tstar = gcws_hash_raw(sign_split(u), cfg)
    codes = encode_codes(istar, tstar, cfg)
    codes.setflags(write=False)
    return HashedVector(codes=codes, config=cfg)


def gcws_hash_batch(
    vectors: Sequence[SparseVector], cfg: GcwsConfig, workers: Optional[int] = None
) -> np.ndarray:
    """Codes for many rows as an ``(n, k)`` int64 matrix.

    Rows are written to their own slot, so the result does not depend on
    ``workers``. Empty rows raise ``EmptyVectorError`` naming the 1-based row.
    """
    workers = workers or get_settings().workers
    out = np.empty((len(vectors), cfg.k), dtype=np.int64)

    def _one(r: int) -> None:
        if vectors[r].nnz == 0:
            raise EmptyVectorError(row=r + 1)
        istar, tstar = gcws_hash_raw(sign_split(vectors[r]), cfg)
        out[r] = encode_codes(istar, tstar, cfg)

    if workers <= 1 or len(vectors) < 2:
        for r in range(len(vectors)):
            _one(r)
    else:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            # list() re-raises the first failure in row order
            list(pool.map(_one, range(len(vectors))))
    logger.info("hashed %d rows (k=%d, b=%d, tbits=%d)", len(vectors), cfg.k, cfg.b, cfg.tbits)
    return out


__all__ = [
    "HashSample",
    "HashedVector",
    "gcws_hash_raw",
    "gcws_hash_one",
    "encode_code",
    "encode_codes",
    "uniform_pair_code",
    "gcws_hash",
    "gcws_hash_batch",
]
