"""
Row-per-sample dump files shared by the code, sketch and RFF stages.

Layout::

    #gcwsnet-<kind> {"k": 64, ...}
    <label> <v_1> ... <v_n>

The JSON header carries the producing configuration so a later stage can refuse
input made under a different one.
"""

from __future__ import annotations

import json
import logging
from pathlib import Path
from typing import Any, Callable, Dict, Optional, Tuple, TypeVar, Union

import numpy as np

from gcwsnet.core.errors import ConfigMismatchError, CorruptInputError, InvalidConfigError

logger = logging.getLogger(__name__)

PathLike = Union[str, Path]
MAGIC = "#gcwsnet-"
T = TypeVar("T")


def write_table(
    path: PathLike,
    kind: str,
    header: Dict[str, Any],
    labels: np.ndarray,
    values: np.ndarray,
    fmt: str = "%d",
) -> None:
    values = np.asarray(values)
    labels = np.asarray(labels, dtype=np.float64)
    if values.ndim != 2 or values.shape[0] != labels.size:
        raise ValueError(f"{labels.size} labels for a value matrix of shape {values.shape}")
    with open(path, "w", encoding="utf-8", newline="\n") as f:
        f.write(f"{MAGIC}{kind} {json.dumps(header, sort_keys=True)}\n")
        for label, row in zip(labels, values):
            f.write(" ".join([_fmt_label(label)] + [fmt % v for v in row]))
            f.write("\n")
    logger.info("wrote %d %s rows to %s", labels.size, kind, path)


def _fmt_label(label: float) -> str:
    return str(int(label)) if float(label).is_integer() else repr(float(label))


def sniff_kind(path: PathLike) -> Optional[str]:
    """The dump kind named on the first line, or None for anything else."""
    with open(path, "r", encoding="utf-8", errors="replace") as f:
        first = f.readline()
    if not first.startswith(MAGIC):
        return None
    return first[len(MAGIC) :].split(" ", 1)[0].strip()


def read_table(
    path: PathLike, kind: str, width_key: str
) -> Tuple[Dict[str, Any], np.ndarray, np.ndarray]:
    """Return ``(header, labels, values)``; values has ``header[width_key]`` columns."""
    path = Path(path)
    found = sniff_kind(path)
    if found is None:
        raise CorruptInputError(f"missing {MAGIC}{kind} header", path=str(path), row=1)
    if found != kind:
        raise ConfigMismatchError(f"{path}: expected a {kind} dump, found {found}")
    with open(path, "r", encoding="utf-8") as f:
        head = f.readline()
        try:
            header = json.loads(head.split(" ", 1)[1])
        except (IndexError, json.JSONDecodeError) as exc:
            raise CorruptInputError("unreadable header", path=str(path), row=1) from exc
        try:
            width = int(header[width_key])
        except (KeyError, TypeError, ValueError) as exc:
            raise CorruptInputError(
                f"header has no usable {width_key!r}", path=str(path), row=1
            ) from exc
        rows = []
        labels = []
        for lineno, line in enumerate(f, start=2):
            tokens = line.split()
            if not tokens:
                continue
            if len(tokens) != width + 1:
                raise CorruptInputError(
                    f"expected {width + 1} fields, got {len(tokens)}", path=str(path), row=lineno
                )
            try:
                parsed = np.array(tokens, dtype=np.float64)
            except ValueError as exc:
                raise CorruptInputError("non-numeric field", path=str(path), row=lineno) from exc
            labels.append(parsed[0])
            rows.append(parsed[1:])
    values = np.vstack(rows) if rows else np.zeros((0, width))
    return header, np.asarray(labels, dtype=np.float64), values


def header_config(factory: Callable[..., T], fields: Dict[str, Any], path: PathLike) -> T:
    """Build a config from header fields; a rejected header is corrupt input."""
    try:
        return factory(**fields)
    except (InvalidConfigError, TypeError) as exc:
        raise CorruptInputError(f"bad header: {exc}", path=str(path), row=1) from exc


__all__ = ["MAGIC", "write_table", "read_table", "sniff_kind", "header_config"]
