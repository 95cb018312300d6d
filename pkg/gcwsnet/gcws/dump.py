"""
Code dump: label followed by k integer codes per row, GcwsConfig in the header.
"""

from typing import Tuple

import numpy as np

from gcwsnet.core.dumpio import PathLike, header_config, read_table, write_table
from gcwsnet.core.errors import CorruptInputError
from gcwsnet.gcws.config import GcwsConfig

KIND = "codes"


def write_codes(path: PathLike, cfg: GcwsConfig, labels: np.ndarray, codes: np.ndarray) -> None:
    write_table(path, KIND, cfg.to_dict(), labels, codes, fmt="%d")


def read_codes(path: PathLike) -> Tuple[GcwsConfig, np.ndarray, np.ndarray]:
    header, labels, values = read_table(path, KIND, "k")
    cfg = header_config(GcwsConfig.create, header, path)
    codes = values.astype(np.int64)
    if np.any(codes != values) or np.any(codes < 0) or np.any(codes >= cfg.block_size):
        bad = np.flatnonzero(
            np.any((codes != values) | (codes < 0) | (codes >= cfg.block_size), axis=1)
        )[0]
        raise CorruptInputError(
            f"code outside [0, {cfg.block_size})", path=str(path), row=int(bad) + 2
        )
    return cfg, labels, codes


__all__ = ["write_codes", "read_codes"]
