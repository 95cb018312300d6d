"""
Tests for the feature pipelines and the last-layer GCWS head.
"""

import numpy as np
import pytest

from gcwsnet.core import ConfigMismatchError, InvalidConfigError, PowerOverflowError
from gcwsnet.core import SparseVector
from gcwsnet.core.libsvm import LabeledDataset, read_libsvm
from gcwsnet.gcws import GcwsConfig, gcws_hash_batch, write_codes
from gcwsnet.learn import (
    MatrixFeatures,
    Model,
    NetConfig,
    OneHotFeatures,
    PreprocConfig,
    build_features,
    last_layer_gcws,
    last_layer_history,
    pipeline,
    run_pipeline,
)
from gcwsnet.learn.pipeline import embedding_positions, load_dump_features
from gcwsnet.nrff import RffConfig
from gcwsnet.sketch import CountSketchConfig, count_sketch_batch, one_hot_batch, write_sketch

GCWS = GcwsConfig.create(p=1.0, k=16, b=8, seed=3)
SKETCH = CountSketchConfig.create(B=64, seed=1)


@pytest.fixture
def train_set(gaussians_train):
    return read_libsvm(gaussians_train)


@pytest.fixture
def test_set(gaussians_test, train_set):
    return read_libsvm(gaussians_test, n_features=train_set.dim, classes=train_set.classes)


# ── features ──────────────────────────────────────────────────────────────


@pytest.mark.parametrize(
    "preproc, width",
    [
        (PreprocConfig.create(kind="raw"), 4),
        (PreprocConfig.create(kind="power", p=2.0), 8),
        (PreprocConfig.create(kind="logpower", p=2.0), 8),
        (PreprocConfig.create(kind="gcws", gcws=GCWS), 16 * 256),
        (PreprocConfig.create(kind="gcws+cs", gcws=GCWS, sketch=SKETCH), 64),
        (PreprocConfig.create(kind="nrff", rff=RffConfig.create(k=32, gamma=1.0)), 32),
    ],
)
def test_feature_widths(train_set, preproc, width):
    X = build_features(train_set, preproc)
    assert X.n == 200
    assert X.width == width


def test_power_features_on_split_data(train_set):
    X = build_features(train_set, PreprocConfig.create(kind="power", p=2.0)).to_dense()
    row = train_set.vectors[0].to_dense()
    expected = np.zeros(8)
    for i, v in enumerate(row):
        expected[2 * i + (v < 0)] = v * v
    np.testing.assert_allclose(X[0], expected)


def test_fused_sketch_equals_sketch_of_codes(train_set):
    X = build_features(train_set, PreprocConfig.create(kind="gcws+cs", gcws=GCWS, sketch=SKETCH))
    codes = gcws_hash_batch(train_set.vectors, GCWS)
    expected = count_sketch_batch(one_hot_batch(codes, GCWS), SKETCH)
    np.testing.assert_array_equal(X.to_dense(), expected)


def test_power_overflow_on_large_p(pendigits_like):
    ds = read_libsvm(pendigits_like)
    with pytest.raises(PowerOverflowError):
        build_features(ds, PreprocConfig.create(kind="power", p=80.0))
    # the same data hashes without trouble
    X = build_features(ds, PreprocConfig.create(kind="gcws", gcws=GcwsConfig.create(p=80.0, k=8)))
    assert X.n == 60


def test_preproc_needs_its_parts():
    with pytest.raises(InvalidConfigError):
        PreprocConfig.create(kind="gcws+cs", gcws=GCWS)
    with pytest.raises(InvalidConfigError):
        PreprocConfig.create(kind="power")


# ── training pipelines ────────────────────────────────────────────────────


def test_gcws_pipeline_learns(train_set, test_set):
    preproc = PreprocConfig.create(kind="gcws", gcws=GCWS)
    run = run_pipeline(train_set, preproc, NetConfig.create(lr=0.01, epochs=5), test_set)
    assert isinstance(run.train_features, OneHotFeatures)
    assert run.history.final_accuracy > 0.85


def test_pipeline_returns_history(train_set):
    history = pipeline(train_set, PreprocConfig.create(kind="raw"), NetConfig.create(epochs=0.5))
    assert history.records[0].samples_seen == 0


def test_width_mismatch(train_set):
    wide = LabeledDataset(
        vectors=[SparseVector.from_dense([1.0, 0.0, 0.0, 0.0, 2.0])],
        labels=np.array([0]),
        classes=train_set.classes,
        dim=5,
    )
    with pytest.raises(ConfigMismatchError):
        run_pipeline(train_set, PreprocConfig.create(kind="raw"), NetConfig.create(), wide)


# ── dumps as input ────────────────────────────────────────────────────────


def test_load_code_and_sketch_dumps(tmp_path, train_set):
    codes = gcws_hash_batch(train_set.vectors, GCWS)
    labels = train_set.classes[train_set.labels]
    codes_path = tmp_path / "train.codes"
    write_codes(codes_path, GCWS, labels, codes)
    X, y, classes, signature = load_dump_features(codes_path)
    assert isinstance(X, OneHotFeatures) and X.width == GCWS.width
    assert classes.tolist() == [1.0, 2.0]
    assert np.array_equal(y, train_set.labels)
    assert signature == {"codes": GCWS.to_dict()}

    sketch_path = tmp_path / "train.sketch"
    write_sketch(sketch_path, GCWS, SKETCH, labels, count_sketch_batch(X.positions, SKETCH))
    S, y2, _, sketch_signature = load_dump_features(sketch_path, classes=classes)
    assert isinstance(S, MatrixFeatures) and S.width == 64
    assert np.array_equal(y2, y)
    assert sketch_signature != signature


# ── last-layer GCWS ───────────────────────────────────────────────────────


def test_embedding_positions_zero_rows_get_code_zero():
    cfg = GcwsConfig.create(p=1.0, k=3, b=2)
    emb = np.array([[0.0, 0.0, 0.0], [0.5, 0.0, 2.0]])
    positions = embedding_positions(emb, cfg)
    assert positions[0].tolist() == [0, 4, 8]
    assert positions.shape == (2, 3)


def test_last_layer_needs_hidden_layer(train_set):
    X = MatrixFeatures(train_set.to_csr())
    head = NetConfig.create(layers=1)
    model = Model.initialize(4, 2, NetConfig.create(layers=1))
    with pytest.raises(InvalidConfigError):
        last_layer_gcws(model, X, train_set.labels, GCWS, head)
    deep = Model.initialize(4, 2, NetConfig.create(layers=2, hidden=8))
    with pytest.raises(InvalidConfigError):
        last_layer_gcws(deep, X, train_set.labels, GCWS, NetConfig.create(layers=2))
    with pytest.raises(InvalidConfigError):
        last_layer_history(X, train_set.labels, NetConfig.create(layers=1), GCWS, head)


def test_last_layer_history(train_set, test_set):
    X = MatrixFeatures(train_set.to_csr())
    eval_set = (MatrixFeatures(test_set.to_csr()), test_set.labels)
    net = NetConfig.create(layers=2, hidden=16, lr=0.01, epochs=0.5, evals_per_epoch=4)
    head = NetConfig.create(layers=1, lr=0.01, epochs=1)
    frame = last_layer_history(
        X, train_set.labels, net, GcwsConfig.create(p=1.0, k=32, b=4), head, eval_set
    )
    assert list(frame.columns) == ["samples_seen", "base_accuracy", "gcws_accuracy"]
    assert frame["samples_seen"].tolist() == [0, 64, 100]
    assert frame["gcws_accuracy"].between(0.0, 1.0).all()


def test_sketch_keeps_gcws_accuracy(train_set, test_set):
    gcws = GcwsConfig.create(p=1.0, k=64, b=4, seed=3)
    # m = k * 2^b / B = 16
    sketch = CountSketchConfig.create(B=gcws.width // 16, seed=1)
    net = NetConfig.create(lr=0.01, epochs=5)
    plain = run_pipeline(train_set, PreprocConfig.create(kind="gcws", gcws=gcws), net, test_set)
    sketched = run_pipeline(
        train_set, PreprocConfig.create(kind="gcws+cs", gcws=gcws, sketch=sketch), net, test_set
    )
    assert sketched.train_features.width == 64
    assert abs(sketched.history.final_accuracy - plain.history.final_accuracy) <= 0.02


def test_last_layer_constant_embedding_gives_majority_rate():
    rng = np.random.default_rng(7)
    X = MatrixFeatures(rng.normal(size=(100, 3)))
    y = np.array([0] * 70 + [1] * 30)
    # zero first layer with positive bias: every row embeds to the same vector
    model = Model(
        [np.zeros((3, 4)), rng.normal(size=(4, 2))],
        [np.ones(4), np.zeros(2)],
    )
    head = NetConfig.create(layers=1, lr=0.01, epochs=5)
    history = last_layer_gcws(model, X, y, GCWS, head, (X, y))
    assert history.final_accuracy == pytest.approx(0.7)


def test_last_layer_one_hot_embedding_reproduces_base_accuracy():
    c = np.repeat([0, 1, 2], 100)
    y = c.copy()
    y[::10] = (c[::10] + 1) % 3
    X = MatrixFeatures(np.eye(3)[c])
    model = Model([np.eye(3), np.eye(3)], [np.zeros(3), np.zeros(3)])
    base = model.accuracy(X, y)
    assert base == pytest.approx(0.9)

    head = NetConfig.create(layers=1, lr=0.01, epochs=5)
    history = last_layer_gcws(model, X, y, GCWS, head, (X, y))
    assert history.final_accuracy == pytest.approx(base)
