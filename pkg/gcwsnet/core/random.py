"""
Keyed counter-based random numbers.

Every random quantity in the toolkit is a pure function of
``(seed, stream, counters...)``: the tuple is folded into a 64-bit state with the
splitmix64 finalizer and the state drives a tiny splitmix64 sequence. Nothing is
stored per coordinate, so hashing a sparse vector only ever materializes
randomness for its nonzero entries, and two vectors hashed with the same seed see
exactly the same numbers on shared coordinates.

All functions broadcast over numpy arrays of counters. Sequential needs (epoch
shuffles, weight init, synthetic data) use ``keyed_generator`` which seeds numpy's
counter-based ``Philox`` bit generator from a derived key.
"""

from enum import IntEnum
from typing import Tuple, Union

import numpy as np

ArrayLike = Union[int, np.ndarray]

_MASK64 = (1 << 64) - 1
_GOLDEN_INT = 0x9E3779B97F4A7C15
_GOLDEN = np.uint64(_GOLDEN_INT)
_M1 = np.uint64(0xBF58476D1CE4E5B9)
_M2 = np.uint64(0x94D049BB133111EB)
_S11 = np.uint64(11)
_S27 = np.uint64(27)
_S30 = np.uint64(30)
_S31 = np.uint64(31)
_INV53 = 2.0**-53


class Stream(IntEnum):
    """Stream tags; one per consumer so streams never overlap."""

    GCWS = 0x47435753
    PAIR_CODE = 0x50414952
    SKETCH_BIN = 0x534B4249
    SKETCH_SIGN = 0x534B5347
    RFF_PROJECTION = 0x52464650
    RFF_PHASE = 0x52464657
    TRAIN_INIT = 0x54494E49
    TRAIN_SHUFFLE = 0x54534855
    VALIDATE = 0x56414C49


def as_u64(x: ArrayLike) -> np.ndarray:
    """Reinterpret integers as uint64 (two's complement for negatives)."""
    arr = np.asarray(x)
    if arr.dtype == np.uint64:
        return arr
    if arr.dtype.kind == "i":
        return np.asarray(arr, dtype=np.int64).view(np.uint64)
    if arr.dtype.kind in "ub":
        return arr.astype(np.uint64)
    if arr.dtype == object:
        return np.asarray([int(v) & _MASK64 for v in arr.ravel()], dtype=np.uint64).reshape(
            arr.shape
        )
    raise TypeError(f"expected integer counters, got dtype {arr.dtype}")


def mix64(x: ArrayLike) -> np.ndarray:
    """splitmix64 finalizer; a bijective avalanche mix of 64-bit words."""
    z = as_u64(x)
    with np.errstate(over="ignore"):
        z = (z ^ (z >> _S30)) * _M1
        z = (z ^ (z >> _S27)) * _M2
        return z ^ (z >> _S31)


def keyed_state(seed: int, stream: int, *counters: ArrayLike) -> np.ndarray:
    """Fold ``(seed, stream, counters...)`` into a 64-bit state (broadcasting)."""
    head = ((int(seed) & _MASK64) ^ ((int(stream) * _GOLDEN_INT) & _MASK64)) & _MASK64
    h = mix64(np.asarray(head, dtype=np.uint64))
    with np.errstate(over="ignore"):
        for c in counters:
            h = mix64(h ^ mix64(as_u64(c) + _GOLDEN))
    return h


def draw_bits(state: np.ndarray, n: int) -> np.ndarray:
    """The ``n``-th 64-bit output of the splitmix64 sequence started at ``state``."""
    inc = np.uint64(((n + 1) * _GOLDEN_INT) & _MASK64)
    with np.errstate(over="ignore"):
        return mix64(state + inc)


def unit_open(bits: np.ndarray) -> np.ndarray:
    """Map 64-bit words to doubles in the open interval (0, 1)."""
    return ((bits >> _S11).astype(np.float64) + 0.5) * _INV53


def unit_half_open(bits: np.ndarray) -> np.ndarray:
    """Map 64-bit words to doubles in [0, 1)."""
    return (bits >> _S11).astype(np.float64) * _INV53


def keyed_bits(seed: int, stream: int, *counters: ArrayLike) -> np.ndarray:
    return draw_bits(keyed_state(seed, stream, *counters), 0)


def keyed_uniforms(seed: int, stream: int, *counters: ArrayLike) -> np.ndarray:
    """Uniform(0, 1) per counter tuple."""
    return unit_open(keyed_bits(seed, stream, *counters))


def keyed_normals(seed: int, stream: int, *counters: ArrayLike) -> np.ndarray:
    """Standard normal per counter tuple (Box-Muller on two draws)."""
    state = keyed_state(seed, stream, *counters)
    u1 = unit_open(draw_bits(state, 0))
    u2 = unit_open(draw_bits(state, 1))
    return np.sqrt(-2.0 * np.log(u1)) * np.cos(2.0 * np.pi * u2)


def gamma21_uniforms(state: np.ndarray) -> Tuple[np.ndarray, np.ndarray, np.ndarray]:
    """(r, c, beta) from one state: r, c ~ Gamma(2, 1), beta ~ Uniform[0, 1)."""
    r = -np.log(unit_open(draw_bits(state, 0))) - np.log(unit_open(draw_bits(state, 1)))
    c = -np.log(unit_open(draw_bits(state, 2))) - np.log(unit_open(draw_bits(state, 3)))
    beta = unit_half_open(draw_bits(state, 4))
    return r, c, beta


def keyed_randoms(seed: int, j: ArrayLike, i: ArrayLike):
    """GCWS randomness for hash index ``j`` and transformed coordinate ``i``.

    Returns ``(r, c, beta)``; floats for scalar counters, arrays otherwise.
    """
    r, c, beta = gamma21_uniforms(keyed_state(seed, Stream.GCWS, j, i))
    if np.ndim(r) == 0:
        return float(r), float(c), float(beta)
    return r, c, beta


def derive_seed(seed: int, stream: int, *counters: int) -> int:
    """A child seed for ``(seed, stream, counters...)`` as a Python int."""
    return int(np.asarray(keyed_bits(seed, stream, *counters)).item())


def keyed_generator(seed: int, stream: int, *counters: int) -> np.random.Generator:
    """A numpy Generator on Philox keyed by the derived seed."""
    return np.random.Generator(np.random.Philox(key=derive_seed(seed, stream, *counters)))


__all__ = [
    "Stream",
    "as_u64",
    "mix64",
    "keyed_state",
    "draw_bits",
    "unit_open",
    "unit_half_open",
    "keyed_bits",
    "keyed_uniforms",
    "keyed_normals",
    "gamma21_uniforms",
    "keyed_randoms",
    "derive_seed",
    "keyed_generator",
]
