"""Numpy softmax / MLP trainer and the GCWSNet feature pipelines."""

from gcwsnet.learn.checkpoint import load_checkpoint, save_checkpoint
from gcwsnet.learn.config import NetConfig, PreprocConfig
from gcwsnet.learn.features import (
    MatrixFeatures,
    OneHotFeatures,
    RowGrad,
    dense_grad,
    sparse_binary_forward,
)
from gcwsnet.learn.model import Adam, Model, gradient_check
from gcwsnet.learn.pipeline import (
    LastLayerRecorder,
    build_features,
    build_train_eval,
    last_layer_gcws,
    last_layer_history,
    pipeline,
    run_pipeline,
)
from gcwsnet.learn.trainer import TrainHistory, TrainRecord, train

__all__ = [
    "NetConfig",
    "PreprocConfig",
    "MatrixFeatures",
    "OneHotFeatures",
    "RowGrad",
    "dense_grad",
    "sparse_binary_forward",
    "Model",
    "Adam",
    "gradient_check",
    "TrainHistory",
    "TrainRecord",
    "train",
    "build_features",
    "build_train_eval",
    "run_pipeline",
    "pipeline",
    "last_layer_gcws",
    "last_layer_history",
    "LastLayerRecorder",
    "save_checkpoint",
    "load_checkpoint",
]
