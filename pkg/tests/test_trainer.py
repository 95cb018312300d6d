"""
Tests for minibatch training, its history and checkpoints.
"""

import math

import numpy as np
import pytest

from gcwsnet.core import CorruptInputError, DivergenceError
from gcwsnet.core.libsvm import read_libsvm
from gcwsnet.learn import (
    MatrixFeatures,
    Model,
    NetConfig,
    TrainHistory,
    load_checkpoint,
    save_checkpoint,
    train,
)
from gcwsnet.learn.checkpoint import MAGIC
from gcwsnet.learn.trainer import HISTORY_COLUMNS


@pytest.fixture
def gaussians(gaussians_train, gaussians_test):
    tr = read_libsvm(gaussians_train)
    te = read_libsvm(gaussians_test, n_features=tr.dim, classes=tr.classes)
    return MatrixFeatures(tr.to_csr()), tr.labels, MatrixFeatures(te.to_csr()), te.labels


def test_separable_data_is_learned(gaussians):
    X, y, X_test, y_test = gaussians
    net = NetConfig.create(lr=0.1, epochs=3, seed=0)
    model, history = train(X, y, net, (X_test, y_test), n_classes=2)
    assert history.final_accuracy > 0.95
    assert model.accuracy(X_test, y_test) == history.final_accuracy


def test_hidden_layers_learn_too(gaussians):
    X, y, X_test, y_test = gaussians
    net = NetConfig.create(layers=3, hidden=16, lr=0.01, epochs=5, seed=1)
    _, history = train(X, y, net, (X_test, y_test))
    assert history.final_accuracy > 0.9


def test_record_cadence(gaussians):
    X, y, _, _ = gaussians
    net = NetConfig.create(epochs=1, batch_size=32, evals_per_epoch=4)
    _, history = train(X, y, net)
    assert [r.samples_seen for r in history.records] == [0, 64, 128, 160, 200]
    assert [r.iteration for r in history.records] == [0, 2, 4, 5, 7]
    assert history.records[-1].epoch_fraction == 1.0


def test_fractional_epochs_stop_mid_pass(gaussians):
    X, y, _, _ = gaussians
    _, history = train(X, y, NetConfig.create(epochs=0.5, evals_per_epoch=4))
    assert history.records[-1].samples_seen == 100


def test_zero_epochs_leave_the_model_untouched(gaussians):
    X, y, _, _ = gaussians
    net = NetConfig.create(epochs=0, seed=4)
    model, history = train(X, y, net)
    fresh = Model.initialize(X.width, 2, net)
    assert len(history) == 1
    assert history.records[0].samples_seen == 0
    assert all(np.array_equal(p, q) for p, q in zip(model.params(), fresh.params()))


def test_training_is_deterministic(gaussians):
    X, y, X_test, y_test = gaussians
    net = NetConfig.create(layers=2, hidden=8, lr=0.01, epochs=1.5, seed=7)
    m1, h1 = train(X, y, net, (X_test, y_test))
    m2, h2 = train(X, y, net, (X_test, y_test))
    assert h1.to_frame().equals(h2.to_frame())
    assert all(np.array_equal(p, q) for p, q in zip(m1.params(), m2.params()))


def test_non_finite_loss_raises(gaussians):
    X, y, _, _ = gaussians
    net = NetConfig.create(epochs=1)
    model = Model.initialize(X.width, 2, net)
    model.weights[0][0, 0] = np.nan
    with pytest.raises(DivergenceError) as exc:
        train(X, y, net, model=model)
    assert exc.value.iteration == 1


def test_history_csv(tmp_path, gaussians):
    X, y, _, _ = gaussians
    _, history = train(X, y, NetConfig.create(epochs=0.25, evals_per_epoch=2))
    path = tmp_path / "history.csv"
    history.write_csv(path)
    lines = path.read_text(encoding="utf-8").splitlines()
    assert lines[0] == ",".join(HISTORY_COLUMNS)
    assert len(lines) == len(history) + 1
    assert math.isnan(TrainHistory().final_accuracy)


# ── checkpoints ───────────────────────────────────────────────────────────


def test_checkpoint_round_trip(tmp_path, gaussians):
    X, y, _, _ = gaussians
    net = NetConfig.create(layers=2, hidden=5, epochs=0.5, seed=3)
    model, _ = train(X, y, net)
    path = tmp_path / "model.ckpt"
    save_checkpoint(path, model, net, {"classes": [1.0, 2.0]})
    loaded, net2, header = load_checkpoint(path)
    assert net2 == net
    assert header["classes"] == [1.0, 2.0]
    assert all(np.array_equal(p, q) for p, q in zip(model.params(), loaded.params()))
    assert np.array_equal(model.predict(X), loaded.predict(X))


def test_checkpoint_corruption(tmp_path):
    net = NetConfig.create()
    path = tmp_path / "model.ckpt"
    save_checkpoint(path, Model.initialize(3, 2, net), net)
    data = path.read_bytes()

    bad_magic = tmp_path / "magic.ckpt"
    bad_magic.write_bytes(b"NOTAMODEL" + data[len(MAGIC):])
    truncated = tmp_path / "short.ckpt"
    truncated.write_bytes(data[:-8])
    trailing = tmp_path / "long.ckpt"
    trailing.write_bytes(data + b"\0")

    for path in (bad_magic, truncated, trailing):
        with pytest.raises(CorruptInputError):
            load_checkpoint(path)
