"""
End-to-end feature pipelines and the last-layer GCWS head.

``build_features`` turns a LIBSVM dataset into trainer input for one of the
preprocessing kinds; ``run_pipeline`` trains on it. ``last_layer_gcws`` hashes the
last hidden layer of a trained network and fits a fresh softmax head on the
one-hot codes.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass
from typing import List, Optional, Sequence, Tuple

import numpy as np
import pandas as pd
import scipy.sparse as sp

from gcwsnet.core.dumpio import PathLike, sniff_kind
from gcwsnet.core.errors import (
    ConfigMismatchError,
    CorruptInputError,
    InvalidConfigError,
    PowerOverflowError,
)
from gcwsnet.core.libsvm import LabeledDataset, encode_labels
from gcwsnet.core.preprocess import logpower_transform, power_transform
from gcwsnet.core.vectors import SparseVector, sign_split
from gcwsnet.gcws.config import GcwsConfig
from gcwsnet.gcws.dump import read_codes
from gcwsnet.gcws.hashing import encode_codes, gcws_hash_batch, gcws_hash_raw
from gcwsnet.learn.config import NetConfig, PreprocConfig
from gcwsnet.learn.features import Features, MatrixFeatures, OneHotFeatures
from gcwsnet.learn.model import Model
from gcwsnet.learn.trainer import OnRecord, TrainHistory, TrainRecord, train
from gcwsnet.nrff.dump import read_rff
from gcwsnet.nrff.features import rff_batch
from gcwsnet.sketch.count_sketch import count_sketch_csr
from gcwsnet.sketch.dump import read_sketch
from gcwsnet.sketch.onehot import one_hot_batch

logger = logging.getLogger(__name__)


@dataclass
class PipelineRun:
    model: Model
    history: TrainHistory
    train_features: Features
    test_features: Optional[Features]


# ---------------------------------------------------------------------------
# Features
# ---------------------------------------------------------------------------


def _csr(vectors: Sequence[SparseVector], dim: int) -> sp.csr_matrix:
    return LabeledDataset(vectors=list(vectors), labels=np.zeros(0), classes=np.zeros(0),
                          dim=dim).to_csr()


def _powered(dataset: LabeledDataset, p: float, log: bool) -> List[SparseVector]:
    out = []
    for row, u in enumerate(dataset.vectors, start=1):
        if not u.nnz:
            out.append(SparseVector(2 * dataset.dim, [], []))
            continue
        t = sign_split(u)
        if log:
            out.append(logpower_transform(t, p))
        else:
            try:
                out.append(power_transform(t, p, row=row))
            except PowerOverflowError:
                logger.error("power transform overflowed on row %d (p=%s)", row, p)
                raise
    return out


def build_features(
    dataset: LabeledDataset, preproc: PreprocConfig, workers: Optional[int] = None
) -> Features:
    kind = preproc.kind
    if kind == "raw":
        return MatrixFeatures(dataset.to_csr())
    if kind in ("power", "logpower"):
        vectors = _powered(dataset, preproc.p, log=kind == "logpower")
        return MatrixFeatures(_csr(vectors, 2 * dataset.dim))
    if kind in ("gcws", "gcws+cs"):
        cfg = preproc.gcws
        positions = one_hot_batch(gcws_hash_batch(dataset.vectors, cfg, workers), cfg)
        if kind == "gcws":
            return OneHotFeatures(positions, cfg.width)
        return MatrixFeatures(count_sketch_csr(positions, preproc.sketch))
    if kind == "nrff":
        return MatrixFeatures(rff_batch(dataset.vectors, preproc.rff, preproc.normalize, workers))
    raise InvalidConfigError(f"unknown preprocessing {kind!r}")


def build_train_eval(
    train_set: LabeledDataset,
    preproc: PreprocConfig,
    test_set: Optional[LabeledDataset] = None,
    workers: Optional[int] = None,
) -> Tuple[Features, Optional[Features]]:
    """Training features and, when ``test_set`` is given, matching test features."""
    X = build_features(train_set, preproc, workers)
    X_test = build_features(test_set, preproc, workers) if test_set is not None else None
    if X_test is not None and X_test.width != X.width:
        raise ConfigMismatchError(f"test width {X_test.width} != train width {X.width}")
    logger.info("pipeline %s: %d rows, input width %d", preproc.kind, X.n, X.width)
    return X, X_test


def run_pipeline(
    train_set: LabeledDataset,
    preproc: PreprocConfig,
    net: NetConfig,
    test_set: Optional[LabeledDataset] = None,
    workers: Optional[int] = None,
    on_record: Optional[OnRecord] = None,
) -> PipelineRun:
    X, X_test = build_train_eval(train_set, preproc, test_set, workers)
    eval_set = (X_test, test_set.labels) if X_test is not None and test_set is not None else None
    model, history = train(
        X, train_set.labels, net, eval_set, n_classes=train_set.n_classes, on_record=on_record
    )
    return PipelineRun(model, history, X, X_test)


def pipeline(
    dataset: LabeledDataset,
    preproc: PreprocConfig,
    net: NetConfig,
    test_set: Optional[LabeledDataset] = None,
) -> TrainHistory:
    return run_pipeline(dataset, preproc, net, test_set).history


def load_dump_features(
    path: PathLike, classes: Optional[Sequence[float]] = None
) -> Tuple[Features, np.ndarray, np.ndarray, dict]:
    """Trainer input from a code, sketch or rff dump.

    Returns ``(features, class_ids, class_values, signature)``; two dumps with equal
    signatures were produced under the same configuration.
    """
    kind = sniff_kind(path)
    if kind == "codes":
        cfg, labels, codes = read_codes(path)
        features: Features = OneHotFeatures(one_hot_batch(codes, cfg), cfg.width)
        signature = {"codes": cfg.to_dict()}
    elif kind == "sketch":
        cfg, cs, labels, values = read_sketch(path)
        features = MatrixFeatures(sp.csr_matrix(values.astype(np.float64)))
        signature = {"sketch": cs.to_dict(), "gcws": cfg.to_dict()}
    elif kind == "rff":
        rff, normalized, labels, values = read_rff(path)
        features = MatrixFeatures(values)
        signature = {"rff": rff.to_dict(), "normalized": normalized}
    else:
        raise CorruptInputError(f"not a gcwsnet dump (kind {kind!r})", path=str(path), row=1)
    ids, class_values = encode_labels(labels, classes, path, first_row=2)
    logger.info("loaded %s dump %s: %d rows, width %d", kind, path, features.n, features.width)
    return features, ids, class_values, signature


# ---------------------------------------------------------------------------
# Last-layer GCWS
# ---------------------------------------------------------------------------


def embedding_positions(embeddings: np.ndarray, cfg: GcwsConfig) -> np.ndarray:
    """One-hot positions of GCWS codes of each embedding row.

    All-zero rows get code 0 in every block.
    """
    n = embeddings.shape[0]
    codes = np.zeros((n, cfg.k), dtype=np.int64)
    dead = 0
    for r in range(n):
        u = SparseVector.from_dense(embeddings[r])
        if u.nnz == 0:
            dead += 1
            continue
        istar, tstar = gcws_hash_raw(sign_split(u), cfg)
        codes[r] = encode_codes(istar, tstar, cfg)
    if dead:
        logger.warning("%d of %d embeddings are all zero; encoded as code 0", dead, n)
    return one_hot_batch(codes, cfg)


def last_layer_gcws(
    model: Model,
    train_features: Features,
    train_labels: np.ndarray,
    cfg: GcwsConfig,
    head: NetConfig,
    eval_set: Optional[Tuple[Features, np.ndarray]] = None,
) -> TrainHistory:
    """Train a softmax head on GCWS codes of the model's last hidden layer."""
    if model.n_hidden_layers == 0:
        raise InvalidConfigError("last-layer GCWS needs a model with a hidden layer")
    if head.layers != 1:
        raise InvalidConfigError(f"the head must be softmax regression (L=1), got L={head.layers}")
    X = OneHotFeatures(embedding_positions(model.embed(train_features), cfg), cfg.width)
    head_eval = None
    if eval_set is not None:
        X_eval, y_eval = eval_set
        head_eval = (
            OneHotFeatures(embedding_positions(model.embed(X_eval), cfg), cfg.width),
            y_eval,
        )
    _, history = train(X, train_labels, head, head_eval, n_classes=model.n_classes)
    return history


class LastLayerRecorder:
    """``on_record`` callback scoring a last-layer GCWS head at every ``every``-th record.

    Pass it to ``train`` so the base network is trained once while the head
    accuracy is recorded alongside.
    """

    COLUMNS = ["samples_seen", "base_accuracy", "gcws_accuracy"]

    def __init__(
        self,
        train_features: Features,
        train_labels: np.ndarray,
        cfg: GcwsConfig,
        head: NetConfig,
        eval_set: Optional[Tuple[Features, np.ndarray]] = None,
        every: int = 1,
    ):
        if every < 1:
            raise InvalidConfigError(f"every must be >= 1, got {every}")
        self.train_features = train_features
        self.train_labels = train_labels
        self.cfg = cfg
        self.head = head
        self.eval_set = eval_set
        self.every = every
        self.rows: List[dict] = []
        self._count = 0

    def __call__(self, snapshot: Model, rec: TrainRecord) -> None:
        self._count += 1
        if (self._count - 1) % self.every:
            return
        head_history = last_layer_gcws(
            snapshot.copy(),
            self.train_features,
            self.train_labels,
            self.cfg,
            self.head,
            self.eval_set,
        )
        self.rows.append(
            {
                "samples_seen": rec.samples_seen,
                "base_accuracy": rec.test_accuracy,
                "gcws_accuracy": head_history.final_accuracy,
            }
        )

    def frame(self) -> pd.DataFrame:
        return pd.DataFrame(self.rows, columns=self.COLUMNS)


def last_layer_history(
    train_features: Features,
    train_labels: np.ndarray,
    net: NetConfig,
    cfg: GcwsConfig,
    head: NetConfig,
    eval_set: Optional[Tuple[Features, np.ndarray]] = None,
    n_classes: Optional[int] = None,
    every: int = 1,
) -> pd.DataFrame:
    """Train the base network and record last-layer-GCWS accuracy next to it."""
    if net.layers == 1:
        raise InvalidConfigError("last-layer GCWS needs a model with a hidden layer")
    recorder = LastLayerRecorder(train_features, train_labels, cfg, head, eval_set, every)
    train(train_features, train_labels, net, eval_set, n_classes=n_classes, on_record=recorder)
    return recorder.frame()


__all__ = [
    "PipelineRun",
    "LastLayerRecorder",
    "build_features",
    "build_train_eval",
    "run_pipeline",
    "pipeline",
    "load_dump_features",
    "embedding_positions",
    "last_layer_gcws",
    "last_layer_history",
]
