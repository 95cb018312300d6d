"""
Versioned binary model checkpoints.

Layout: ``GCWSNET\\0`` magic, little-endian uint32 format version, uint32 header
length, UTF-8 JSON header, then every parameter array as little-endian float64 in
order W0, b0, W1, b1, ...
"""

from __future__ import annotations

import json
import logging
from pathlib import Path
from typing import Any, Dict, Optional, Tuple, Union

import numpy as np

from gcwsnet.__version__ import __version__
from gcwsnet.core.errors import CorruptInputError
from gcwsnet.learn.config import NetConfig
from gcwsnet.learn.model import Model

logger = logging.getLogger(__name__)

MAGIC = b"GCWSNET\0"
FORMAT_VERSION = 1
_U32 = np.dtype("<u4")
_F64 = np.dtype("<f8")


def save_checkpoint(
    path: Union[str, Path],
    model: Model,
    net: NetConfig,
    extra: Optional[Dict[str, Any]] = None,
) -> None:
    header = {
        "net": net.to_dict(),
        "input_width": model.input_width,
        "n_classes": model.n_classes,
        "shapes": [list(s) for s in model.shapes],
        "gcwsnet_version": __version__,
        **(extra or {}),
    }
    blob = json.dumps(header, sort_keys=True).encode("utf-8")
    with open(path, "wb") as f:
        f.write(MAGIC)
        f.write(np.array([FORMAT_VERSION, len(blob)], dtype=_U32).tobytes())
        f.write(blob)
        for p in model.params():
            f.write(np.ascontiguousarray(p, dtype=_F64).tobytes())
    logger.info("saved checkpoint %s (%s)", path, header["shapes"])


def load_checkpoint(path: Union[str, Path]) -> Tuple[Model, NetConfig, Dict[str, Any]]:
    data = Path(path).read_bytes()
    if not data.startswith(MAGIC):
        raise CorruptInputError("not a model checkpoint", path=str(path))
    pos = len(MAGIC)
    try:
        version, length = np.frombuffer(data, dtype=_U32, count=2, offset=pos)
    except ValueError as exc:
        raise CorruptInputError("truncated checkpoint", path=str(path)) from exc
    if version != FORMAT_VERSION:
        raise CorruptInputError(f"unsupported checkpoint version {version}", path=str(path))
    pos += 2 * _U32.itemsize
    try:
        header = json.loads(data[pos : pos + int(length)].decode("utf-8"))
    except (UnicodeDecodeError, json.JSONDecodeError) as exc:
        raise CorruptInputError("unreadable checkpoint header", path=str(path)) from exc
    pos += int(length)

    weights, biases = [], []
    for rows, cols in header["shapes"]:
        for shape in ((rows, cols), (cols,)):
            count = int(np.prod(shape))
            if pos + count * _F64.itemsize > len(data):
                raise CorruptInputError("truncated checkpoint", path=str(path))
            arr = np.frombuffer(data, dtype=_F64, count=count, offset=pos).reshape(shape)
            (weights if len(shape) == 2 else biases).append(arr.astype(np.float64))
            pos += count * _F64.itemsize
    if pos != len(data):
        raise CorruptInputError("trailing bytes after parameters", path=str(path))
    return Model(weights, biases), NetConfig.create(**header["net"]), header


__all__ = ["MAGIC", "FORMAT_VERSION", "save_checkpoint", "load_checkpoint"]
