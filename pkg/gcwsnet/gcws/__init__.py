"""Generalized consistent weighted sampling and b-bit codes."""

from gcwsnet.gcws.config import GcwsConfig
from gcwsnet.gcws.dump import read_codes, write_codes
from gcwsnet.gcws.hashing import (
    HashedVector,
    HashSample,
    encode_code,
    encode_codes,
    gcws_hash,
    gcws_hash_batch,
    gcws_hash_one,
    gcws_hash_raw,
    uniform_pair_code,
)

__all__ = [
    "GcwsConfig",
    "HashSample",
    "HashedVector",
    "gcws_hash_raw",
    "gcws_hash_one",
    "gcws_hash",
    "gcws_hash_batch",
    "encode_code",
    "encode_codes",
    "uniform_pair_code",
    "write_codes",
    "read_codes",
]
