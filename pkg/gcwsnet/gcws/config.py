"""
GCWS hash family configuration.
"""

import math

from pydantic import Field, field_validator, model_validator

from gcwsnet.config.base import SEED_MAX, FrozenConfig


class GcwsConfig(FrozenConfig):
    """(p, k, b, tbits, seed) fully determine the hash family."""

    p: float
    k: int = Field(ge=1)
    b: int = Field(default=8, ge=1, le=32)
    tbits: int = Field(default=0, ge=0, le=8)
    seed: int = Field(default=0, ge=0, le=SEED_MAX)

    @field_validator("p")
    @classmethod
    def _p_nonzero(cls, v: float) -> float:
        if v == 0 or not math.isfinite(v):
            raise ValueError("p must be finite and nonzero")
        return v

    @model_validator(mode="after")
    def _code_fits(self) -> "GcwsConfig":
        if self.b + self.tbits > 32:
            raise ValueError(f"b + tbits must be <= 32, got {self.b} + {self.tbits}")
        return self

    @property
    def code_bits(self) -> int:
        return self.b + self.tbits

    @property
    def block_size(self) -> int:
        """Width of one one-hot block, 2**(b + tbits)."""
        return 1 << self.code_bits

    @property
    def width(self) -> int:
        """One-hot feature width d = block_size * k."""
        return self.block_size * self.k


__all__ = ["GcwsConfig"]
