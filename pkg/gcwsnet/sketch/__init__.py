"""One-hot block features, count-sketch compression and its variance formulas."""

from gcwsnet.sketch.count_sketch import (
    CountSketchConfig,
    SketchedFeatures,
    count_sketch,
    count_sketch_batch,
    count_sketch_csr,
    count_sketch_positions,
    estimate_pb,
)
from gcwsnet.sketch.dump import read_sketch, write_sketch
from gcwsnet.sketch.onehot import EncodedFeatures, one_hot, one_hot_batch, render_blocks
from gcwsnet.sketch.variance import (
    collision_probability,
    cs_conditional_variance,
    cs_inner_variance,
    cs_ratio,
    cs_variance,
    ratio_table,
)

__all__ = [
    "EncodedFeatures",
    "one_hot",
    "one_hot_batch",
    "render_blocks",
    "CountSketchConfig",
    "SketchedFeatures",
    "count_sketch",
    "count_sketch_batch",
    "count_sketch_csr",
    "count_sketch_positions",
    "estimate_pb",
    "collision_probability",
    "cs_conditional_variance",
    "cs_inner_variance",
    "cs_variance",
    "cs_ratio",
    "ratio_table",
    "read_sketch",
    "write_sketch",
]
