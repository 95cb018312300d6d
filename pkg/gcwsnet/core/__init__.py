"""Vectors, kernels, preprocessors, LIBSVM I/O and the keyed random streams."""

from gcwsnet.core.errors import (
    ConfigMismatchError,
    CorruptInputError,
    DivergenceError,
    EmptyVectorError,
    GcwsNetError,
    InvalidConfigError,
    InvalidParameterError,
    PowerOverflowError,
)
from gcwsnet.core.kernels import (
    cosine,
    gmm_correlation_limit,
    gmm_kernel,
    jaccard,
    pgmm_kernel,
    rbf_kernel,
)
from gcwsnet.core.preprocess import logpower_transform, power_transform
from gcwsnet.core.random import keyed_randoms
from gcwsnet.core.vectors import SparseVector, TransformedVector, sign_merge, sign_split

__all__ = [
    "GcwsNetError",
    "EmptyVectorError",
    "InvalidParameterError",
    "InvalidConfigError",
    "ConfigMismatchError",
    "PowerOverflowError",
    "CorruptInputError",
    "DivergenceError",
    "SparseVector",
    "TransformedVector",
    "sign_split",
    "sign_merge",
    "pgmm_kernel",
    "gmm_kernel",
    "gmm_correlation_limit",
    "jaccard",
    "cosine",
    "rbf_kernel",
    "power_transform",
    "logpower_transform",
    "keyed_randoms",
]
