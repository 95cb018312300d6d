"""
Run manifests.

Every CLI command writes ``<primary output>.manifest.json`` next to its main
output: the command, every parameter (seeds included), sha256 digests of the
inputs, the outputs and wall-clock timing. Re-running the command with the
recorded parameters on inputs with the recorded digests reproduces the outputs
byte for byte in single-worker mode.
"""

from __future__ import annotations

import hashlib
import json
import logging
import time
from dataclasses import asdict, dataclass, field
from datetime import datetime, timezone
from pathlib import Path
from typing import Any, Dict, List, Optional, Union

from gcwsnet.__version__ import __version__

logger = logging.getLogger(__name__)

SCHEMA_VERSION = 1
PathLike = Union[str, Path]


def _utc_iso() -> str:
    return datetime.now(timezone.utc).isoformat()


def file_sha256(path: PathLike) -> str:
    h = hashlib.sha256()
    with open(path, "rb") as f:
        for block in iter(lambda: f.read(1 << 20), b""):
            h.update(block)
    return h.hexdigest()


def manifest_path(output: PathLike) -> Path:
    return Path(f"{output}.manifest.json")


@dataclass
class RunManifest:
    command: str
    parameters: Dict[str, Any]
    inputs: Dict[str, str] = field(default_factory=dict)
    outputs: List[str] = field(default_factory=list)
    started_at: str = ""
    duration_seconds: float = 0.0
    version: str = __version__
    schema_version: int = SCHEMA_VERSION
    _t0: Optional[float] = field(default=None, repr=False, compare=False)

    @classmethod
    def start(cls, command: str, parameters: Dict[str, Any]) -> "RunManifest":
        m = cls(command=command, parameters=dict(parameters), started_at=_utc_iso())
        m._t0 = time.monotonic()
        return m

    def add_input(self, path: PathLike) -> None:
        self.inputs[str(path)] = file_sha256(path)

    def add_output(self, path: PathLike) -> None:
        self.outputs.append(str(path))

    def to_dict(self) -> Dict[str, Any]:
        data = asdict(self)
        data.pop("_t0", None)
        return data

    def finish(self, primary_output: PathLike) -> Path:
        """Stamp the duration and write the sidecar next to ``primary_output``."""
        if self._t0 is not None:
            self.duration_seconds = round(time.monotonic() - self._t0, 6)
        path = manifest_path(primary_output)
        path.write_text(json.dumps(self.to_dict(), indent=2, sort_keys=True) + "\n", "utf-8")
        logger.info("wrote manifest %s", path)
        return path


def load_manifest(path: PathLike) -> RunManifest:
    data = json.loads(Path(path).read_text("utf-8"))
    return RunManifest(**data)


__all__ = ["RunManifest", "file_sha256", "manifest_path", "load_manifest"]
