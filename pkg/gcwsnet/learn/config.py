"""
Network and preprocessing configurations for the trainer.
"""

from __future__ import annotations

import math
from typing import Literal, Optional, Tuple

from pydantic import Field, field_validator, model_validator

from gcwsnet.config.base import SEED_MAX, FrozenConfig
from gcwsnet.gcws.config import GcwsConfig
from gcwsnet.nrff.features import RffConfig
from gcwsnet.sketch.count_sketch import CountSketchConfig

PreprocKind = Literal["raw", "power", "logpower", "gcws", "gcws+cs", "nrff"]
PREPROC_KINDS: Tuple[str, ...] = ("raw", "power", "logpower", "gcws", "gcws+cs", "nrff")


class NetConfig(FrozenConfig):
    """Softmax regression (L=1) or a ReLU MLP with one or two hidden layers.

    L=2 has one hidden layer of H units; L=3 has hidden sizes (H, H // 2).
    """

    layers: int = Field(default=1, ge=1, le=3)
    hidden: int = Field(default=200, ge=2)
    lr: float = Field(default=0.001, gt=0, allow_inf_nan=False)
    batch_size: int = Field(default=32, ge=1)
    epochs: float = Field(default=1.0, ge=0, allow_inf_nan=False)
    seed: int = Field(default=0, ge=0, le=SEED_MAX)
    evals_per_epoch: int = Field(default=50, ge=1)

    @property
    def hidden_sizes(self) -> Tuple[int, ...]:
        if self.layers == 1:
            return ()
        if self.layers == 2:
            return (self.hidden,)
        return (self.hidden, self.hidden // 2)


class PreprocConfig(FrozenConfig):
    """Which features the trainer sees, with the parameters that kind needs."""

    kind: PreprocKind = "raw"
    p: Optional[float] = None
    gcws: Optional[GcwsConfig] = None
    sketch: Optional[CountSketchConfig] = None
    rff: Optional[RffConfig] = None
    normalize: bool = True

    @field_validator("p")
    @classmethod
    def _p_nonzero(cls, v: Optional[float]) -> Optional[float]:
        if v is not None and (v == 0 or not math.isfinite(v)):
            raise ValueError("p must be finite and nonzero")
        return v

    @model_validator(mode="after")
    def _parts_present(self) -> "PreprocConfig":
        need = {
            "power": ("p",),
            "logpower": ("p",),
            "gcws": ("gcws",),
            "gcws+cs": ("gcws", "sketch"),
            "nrff": ("rff",),
        }.get(self.kind, ())
        missing = [name for name in need if getattr(self, name) is None]
        if missing:
            raise ValueError(f"preprocessing {self.kind!r} needs {', '.join(missing)}")
        return self


__all__ = ["NetConfig", "PreprocConfig", "PREPROC_KINDS"]
