"""
Sketch dump: label followed by B signed integers, with the GCWS and sketch configs
in the header.
"""

from typing import Tuple

import numpy as np

from gcwsnet.core.dumpio import PathLike, header_config, read_table, write_table
from gcwsnet.gcws.config import GcwsConfig
from gcwsnet.sketch.count_sketch import CountSketchConfig

KIND = "sketch"


def write_sketch(
    path: PathLike,
    gcws: GcwsConfig,
    cs: CountSketchConfig,
    labels: np.ndarray,
    values: np.ndarray,
) -> None:
    header = {"gcws": gcws.to_dict(), "sketch": cs.to_dict(), "B": cs.B}
    write_table(path, KIND, header, labels, values, fmt="%d")


def read_sketch(
    path: PathLike,
) -> Tuple[GcwsConfig, CountSketchConfig, np.ndarray, np.ndarray]:
    header, labels, values = read_table(path, KIND, "B")
    return (
        header_config(GcwsConfig.create, header.get("gcws", {}), path),
        header_config(CountSketchConfig.create, header.get("sketch", {}), path),
        labels,
        values.astype(np.int64),
    )


__all__ = ["write_sketch", "read_sketch"]
