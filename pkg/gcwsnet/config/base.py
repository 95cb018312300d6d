"""
Base class for immutable algorithm configurations.
"""

from typing import Any, Dict, Type, TypeVar

from pydantic import BaseModel, ConfigDict, ValidationError

from gcwsnet.core.errors import InvalidConfigError

SEED_MAX = (1 << 64) - 1

C = TypeVar("C", bound="FrozenConfig")


class FrozenConfig(BaseModel):
    """Frozen pydantic model; equal configs describe identical random families."""

    model_config = ConfigDict(frozen=True, extra="forbid")

    @classmethod
    def create(cls: Type[C], **kwargs: Any) -> C:
        """Build the config, reporting validation failures as ``InvalidConfigError``."""
        try:
            return cls(**kwargs)
        except ValidationError as exc:
            problems = "; ".join(
                f"{'.'.join(str(p) for p in err['loc']) or cls.__name__}: {err['msg']}"
                for err in exc.errors()
            )
            raise InvalidConfigError(f"invalid {cls.__name__}: {problems}") from exc

    def to_dict(self) -> Dict[str, Any]:
        return self.model_dump(mode="json")


__all__ = ["FrozenConfig", "SEED_MAX"]
