"""
Tests for the numpy model, its gradients and the feature containers.
"""

import numpy as np
import pytest
import scipy.sparse as sp

from gcwsnet.core import CorruptInputError, InvalidConfigError
from gcwsnet.learn import (
    Adam,
    MatrixFeatures,
    Model,
    NetConfig,
    OneHotFeatures,
    RowGrad,
    dense_grad,
    gradient_check,
    sparse_binary_forward,
)


@pytest.fixture
def dense_batch():
    rng = np.random.default_rng(3)
    return MatrixFeatures(rng.normal(size=(7, 5))), rng.integers(0, 3, 7)


@pytest.mark.parametrize("layers", [1, 2, 3])
def test_gradients_match_finite_differences(dense_batch, layers):
    X, y = dense_batch
    model = Model.initialize(5, 3, NetConfig.create(layers=layers, hidden=6, seed=1))
    assert gradient_check(model, X, y) < 1e-5


def test_one_hot_gradients_match_finite_differences():
    X = OneHotFeatures(np.array([[0, 5], [1, 4], [0, 7], [2, 5]]), width=8)
    y = np.array([0, 1, 1, 0])
    model = Model.initialize(8, 2, NetConfig.create(layers=2, hidden=4, seed=2))
    assert gradient_check(model, X, y) < 1e-5


def test_layer_shapes():
    model = Model.initialize(10, 4, NetConfig.create(layers=3, hidden=8))
    assert model.shapes == [(10, 8), (8, 4), (4, 4)]
    assert model.n_hidden_layers == 2
    assert model.input_width == 10 and model.n_classes == 4


def test_initialization_is_seeded():
    a = Model.initialize(6, 2, NetConfig.create(layers=2, hidden=4, seed=5))
    b = Model.initialize(6, 2, NetConfig.create(layers=2, hidden=4, seed=5))
    c = Model.initialize(6, 2, NetConfig.create(layers=2, hidden=4, seed=6))
    assert all(np.array_equal(p, q) for p, q in zip(a.params(), b.params()))
    assert not np.array_equal(a.weights[0], c.weights[0])
    assert np.all(a.biases[0] == 0.0)
    assert np.abs(a.weights[0]).max() <= 1 / np.sqrt(6)


def test_probabilities_sum_to_one(dense_batch):
    X, _ = dense_batch
    model = Model.initialize(5, 3, NetConfig.create(layers=2, hidden=6))
    np.testing.assert_allclose(model.predict_proba(X).sum(axis=1), 1.0)


def test_softmax_regression_has_no_embedding(dense_batch):
    X, _ = dense_batch
    model = Model.initialize(5, 3, NetConfig.create(layers=1))
    with pytest.raises(InvalidConfigError):
        model.embed(X)


def test_needs_two_classes():
    with pytest.raises(InvalidConfigError):
        Model.initialize(5, 1, NetConfig.create())


def test_adam_first_step_moves_by_lr():
    model = Model([np.zeros((2, 2))], [np.zeros(2)])
    grads = [(np.array([[1.0, -2.0], [0.5, 0.0]]), np.array([3.0, -1.0]))]
    Adam(0.1).step(model, grads)
    np.testing.assert_allclose(model.weights[0], [[-0.1, 0.1], [-0.1, 0.0]], atol=1e-6)
    np.testing.assert_allclose(model.biases[0], [-0.1, 0.1], atol=1e-6)


@pytest.mark.parametrize(
    "kwargs",
    [{"layers": 4}, {"lr": 0.0}, {"batch_size": 0}, {"epochs": -1}, {"hidden": 1}],
)
def test_invalid_net_configs(kwargs):
    with pytest.raises(InvalidConfigError):
        NetConfig.create(**kwargs)


# ── features ──────────────────────────────────────────────────────────────


def test_sparse_forward_matches_dense_product():
    rng = np.random.default_rng(0)
    W = rng.normal(size=(12, 3))
    bias = rng.normal(size=3)
    positions = np.array([[0, 5, 11], [3, 4, 8]])
    X = OneHotFeatures(positions, width=12)
    np.testing.assert_allclose(
        sparse_binary_forward(positions, W, bias), X.to_dense() @ W + bias
    )
    np.testing.assert_allclose(X.first_layer(W, bias), X.to_dense() @ W + bias)


def test_one_hot_weight_grad_matches_dense():
    rng = np.random.default_rng(1)
    X = OneHotFeatures(np.array([[0, 2], [0, 5], [2, 5]]), width=8)
    dZ = rng.normal(size=(3, 2))
    grad = X.weight_grad(dZ)
    assert isinstance(grad, RowGrad)
    assert grad.rows.tolist() == [0, 2, 5]
    assert grad.values.shape == (3, 2)
    np.testing.assert_allclose(grad.to_dense(), X.to_dense().T @ dZ)


def test_adam_row_grad_step_equals_dense_step():
    X = OneHotFeatures(np.array([[1, 4], [4, 6]]), width=8)
    y = np.array([0, 1])
    net = NetConfig.create(layers=1, seed=2)
    sparse_model = Model.initialize(8, 2, net)
    dense_model = sparse_model.copy()
    sparse_opt, dense_opt = Adam(lr=0.01), Adam(lr=0.01)
    for _ in range(3):
        _, grads = sparse_model.loss_and_grads(X, y)
        sparse_opt.step(sparse_model, grads)
        _, grads = dense_model.loss_and_grads(X, y)
        dense_opt.step(dense_model, [(dense_grad(g), gb) for g, gb in grads])
    np.testing.assert_allclose(sparse_model.weights[0], dense_model.weights[0])
    # rows never hit by the batch keep their initial values
    untouched = [0, 2, 3, 5, 7]
    np.testing.assert_array_equal(
        sparse_model.weights[0][untouched], Model.initialize(8, 2, net).weights[0][untouched]
    )


def test_sparse_matrix_features_match_dense():
    rng = np.random.default_rng(2)
    dense = rng.normal(size=(4, 6)) * (rng.random((4, 6)) < 0.5)
    W = rng.normal(size=(6, 2))
    a = MatrixFeatures(sp.csr_matrix(dense))
    b = MatrixFeatures(dense)
    np.testing.assert_allclose(a.first_layer(W, 0.0), b.first_layer(W, 0.0))
    np.testing.assert_allclose(a.rows(np.array([2, 0])).to_dense(), dense[[2, 0]])


def test_positions_out_of_range():
    with pytest.raises(CorruptInputError):
        OneHotFeatures(np.array([[0, 9]]), width=8)
    with pytest.raises(CorruptInputError):
        sparse_binary_forward(np.array([4]), np.zeros((4, 2)))
