"""
Minibatch Adam training with a fixed evaluation cadence.

Each epoch visits the training rows in an order drawn from the seeded shuffle
stream for that epoch. The run stops after ``round(epochs * n)`` samples, so
fractional epochs end mid-pass. Every ``n / evals_per_epoch`` samples the current
model is scored on the evaluation set and a record is appended.
"""

from __future__ import annotations

import logging
import math
from dataclasses import asdict, dataclass, field
from pathlib import Path
from typing import Callable, List, Optional, Tuple, Union

import numpy as np
import pandas as pd

from gcwsnet.core.errors import DivergenceError, InvalidConfigError
from gcwsnet.core.random import Stream, keyed_generator
from gcwsnet.learn.config import NetConfig
from gcwsnet.learn.features import Features
from gcwsnet.learn.model import Adam, Model

logger = logging.getLogger(__name__)

HISTORY_COLUMNS = ["samples_seen", "epoch_fraction", "test_accuracy", "train_loss"]


@dataclass(frozen=True)
class TrainRecord:
    samples_seen: int
    iteration: int
    epoch_fraction: float
    test_accuracy: float
    train_loss: float

    def to_dict(self) -> dict:
        return asdict(self)


@dataclass
class TrainHistory:
    records: List[TrainRecord] = field(default_factory=list)

    def __len__(self) -> int:
        return len(self.records)

    @property
    def final_accuracy(self) -> float:
        return self.records[-1].test_accuracy if self.records else float("nan")

    def to_frame(self) -> pd.DataFrame:
        return pd.DataFrame([r.to_dict() for r in self.records], columns=HISTORY_COLUMNS)

    def write_csv(self, path: Union[str, Path]) -> None:
        self.to_frame().to_csv(path, index=False, lineterminator="\n", float_format="%.10g")


OnRecord = Callable[[Model, TrainRecord], None]


def _check_labels(y: np.ndarray, n_classes: int, n: int) -> np.ndarray:
    y = np.asarray(y, dtype=np.int64)
    if y.shape != (n,):
        raise InvalidConfigError(f"{y.size} labels for {n} rows")
    if n and (y.min() < 0 or y.max() >= n_classes):
        raise InvalidConfigError(f"labels must lie in [0, {n_classes})")
    return y


def train(
    features: Features,
    labels: np.ndarray,
    net: NetConfig,
    eval_set: Optional[Tuple[Features, np.ndarray]] = None,
    n_classes: Optional[int] = None,
    model: Optional[Model] = None,
    on_record: Optional[OnRecord] = None,
) -> Tuple[Model, TrainHistory]:
    """Train a fresh (or the given) model; returns it with its history.

    Without ``eval_set`` the accuracy column is measured on the training rows.
    ``train_loss`` is the mean minibatch loss since the previous record (the
    full training loss for the initial record).
    """
    n = features.n
    if n == 0:
        raise InvalidConfigError("no training rows")
    n_classes = n_classes or int(np.max(labels)) + 1
    y = _check_labels(labels, n_classes, n)
    X_eval, y_eval = eval_set if eval_set is not None else (features, y)
    y_eval = np.asarray(y_eval, dtype=np.int64)

    if model is None:
        model = Model.initialize(features.width, n_classes, net)
    elif model.input_width != features.width:
        raise InvalidConfigError(
            f"model expects width {model.input_width}, features have {features.width}"
        )
    optimizer = Adam(net.lr)
    history = TrainHistory()

    def record(samples_seen: int, iteration: int, loss: float) -> None:
        rec = TrainRecord(
            samples_seen=samples_seen,
            iteration=iteration,
            epoch_fraction=samples_seen / n,
            test_accuracy=model.accuracy(X_eval, y_eval),
            train_loss=loss,
        )
        history.records.append(rec)
        logger.debug(
            "samples=%d acc=%.4f loss=%.5f", samples_seen, rec.test_accuracy, rec.train_loss
        )
        if on_record is not None:
            on_record(model, rec)

    record(0, 0, model.loss(features, y))

    total = int(round(net.epochs * n))
    cadence = n / net.evals_per_epoch
    next_eval = cadence
    seen = 0
    iteration = 0
    loss_sum, loss_count = 0.0, 0
    epoch = 0
    while seen < total:
        order = keyed_generator(net.seed, Stream.TRAIN_SHUFFLE, epoch).permutation(n)
        for start in range(0, n, net.batch_size):
            if seen >= total:
                break
            idx = order[start : min(start + net.batch_size, n, start + total - seen)]
            loss, grads = model.loss_and_grads(features.rows(idx), y[idx])
            iteration += 1
            if not math.isfinite(loss):
                raise DivergenceError(iteration, loss)
            optimizer.step(model, grads)
            seen += idx.size
            loss_sum += loss
            loss_count += 1
            if seen >= next_eval - 1e-9 or seen == total:
                record(seen, iteration, loss_sum / loss_count)
                loss_sum, loss_count = 0.0, 0
                while next_eval <= seen + 1e-9:
                    next_eval += cadence
        epoch += 1

    logger.info(
        "trained %d iterations over %d samples, final accuracy %.4f",
        iteration,
        seen,
        history.final_accuracy,
    )
    return model, history


__all__ = ["TrainRecord", "TrainHistory", "HISTORY_COLUMNS", "train"]
