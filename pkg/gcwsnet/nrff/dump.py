"""
RFF dump: label followed by k real features per row.
"""

from typing import Tuple

import numpy as np

from gcwsnet.core.dumpio import PathLike, header_config, read_table, write_table
from gcwsnet.nrff.features import RffConfig

KIND = "rff"


def write_rff(
    path: PathLike, cfg: RffConfig, normalized: bool, labels: np.ndarray, values: np.ndarray
) -> None:
    header = {**cfg.to_dict(), "normalized": bool(normalized)}
    write_table(path, KIND, header, labels, values, fmt="%.17g")


def read_rff(path: PathLike) -> Tuple[RffConfig, bool, np.ndarray, np.ndarray]:
    header, labels, values = read_table(path, KIND, "k")
    normalized = bool(header.pop("normalized", True))
    return header_config(RffConfig.create, header, path), normalized, labels, values


__all__ = ["write_rff", "read_rff"]
