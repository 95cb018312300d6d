"""Normalized random Fourier features (RBF baseline)."""

from gcwsnet.nrff.dump import read_rff, write_rff
from gcwsnet.nrff.features import RffConfig, RffFeatures, nrff_estimate, rff_batch, rff_features
from gcwsnet.nrff.variance import nrff_variance, rbf_value

__all__ = [
    "RffConfig",
    "RffFeatures",
    "rff_features",
    "rff_batch",
    "nrff_estimate",
    "nrff_variance",
    "rbf_value",
    "read_rff",
    "write_rff",
]
