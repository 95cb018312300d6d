"""
Tests for one-hot encoding and count-sketch compression.
"""

import numpy as np
import pytest

from gcwsnet.core import ConfigMismatchError, CorruptInputError, SparseVector
from gcwsnet.gcws import GcwsConfig, HashedVector, gcws_hash
from gcwsnet.sketch import (
    CountSketchConfig,
    count_sketch,
    count_sketch_batch,
    count_sketch_csr,
    count_sketch_positions,
    estimate_pb,
    one_hot,
    one_hot_batch,
    render_blocks,
    read_sketch,
    write_sketch,
)
from gcwsnet.validate import check_countsketch, check_countsketch_conditional


def hashed(codes, k, b):
    cfg = GcwsConfig.create(p=1.0, k=k, b=b)
    return HashedVector(codes=np.array(codes, dtype=np.int64), config=cfg)


# ── one-hot ───────────────────────────────────────────────────────────────


def test_one_hot_positions_and_rendering():
    f = one_hot(hashed([3, 0, 1], k=3, b=2))
    assert f.positions.tolist() == [3, 4, 9]
    assert f.width == 12
    assert render_blocks(f) == "1 0 0 0  0 0 0 1  0 0 1 0"


def test_one_hot_single_block():
    assert one_hot(hashed([0], k=1, b=1)).positions.tolist() == [0]


def test_one_hot_inner_product_counts_matches():
    a = one_hot(hashed([3, 0, 1, 2], k=4, b=2))
    b = one_hot(hashed([3, 1, 1, 0], k=4, b=2))
    assert a.dot(b) == 2
    assert int(a.to_dense() @ b.to_dense()) == 2


def test_one_hot_rejects_out_of_range():
    cfg = GcwsConfig.create(p=1.0, k=2, b=1)
    with pytest.raises(CorruptInputError) as exc:
        one_hot_batch(np.array([[0, 1], [2, 0]]), cfg)
    assert exc.value.row == 2


def test_one_hot_with_tbits_uses_wider_blocks():
    cfg = GcwsConfig.create(p=1.0, k=2, b=1, tbits=1)
    assert one_hot_batch(np.array([[3, 2]]), cfg).tolist() == [[3, 6]]


# ── count-sketch ──────────────────────────────────────────────────────────


def test_sketch_is_deterministic_and_integer():
    f = one_hot(hashed([3, 0, 1], k=3, b=2))
    cs = CountSketchConfig.create(B=5, seed=7)
    z = count_sketch(f, cs)
    assert z == count_sketch(f, cs)
    assert z.values.dtype == np.int64
    assert np.abs(z.values).sum() <= 3


def test_sketch_is_linear():
    cs = CountSketchConfig.create(B=16, seed=2)
    a = np.array([1, 5, 9, 40])
    b = np.array([2, 5, 33])
    joint = count_sketch_positions(np.concatenate([a, b]), cs)
    assert np.array_equal(joint, count_sketch_positions(a, cs) + count_sketch_positions(b, cs))


def test_sketch_batch_forms_agree():
    cfg = GcwsConfig.create(p=1.0, k=8, b=3)
    rng = np.random.default_rng(0)
    positions = one_hot_batch(rng.integers(0, 8, size=(5, 8)), cfg)
    cs = CountSketchConfig.create(B=11, seed=3)
    dense = count_sketch_batch(positions, cs)
    assert dense.shape == (5, 11)
    assert np.array_equal(count_sketch_csr(positions, cs).toarray(), dense)
    assert np.array_equal(dense[4], count_sketch_positions(positions[4], cs))


def test_estimate_identical_no_collisions():
    # B far above the number of positions
    u = SparseVector.from_dense([1.0, -2.0, 0.5])
    cfg = GcwsConfig.create(p=1.0, k=4, b=2)
    f = one_hot(gcws_hash(u, cfg))
    cs = CountSketchConfig.create(B=1 << 20, seed=1)
    z = count_sketch(f, cs)
    assert estimate_pb(z, z, cfg.k) == pytest.approx(1.0)


def test_identical_inputs_inner_product_expectation():
    report = check_countsketch_conditional(k=16, a=16, B=32, trials=4000, seed=0, workers=1)
    assert report.theoretical == 16.0
    assert abs(report.empirical - 16.0) <= 4 * report.se


def test_estimate_rejects_mismatched_sketches():
    z = count_sketch(one_hot(hashed([1], k=1, b=1)), CountSketchConfig.create(B=4))
    w = count_sketch(one_hot(hashed([1], k=1, b=1)), CountSketchConfig.create(B=8))
    with pytest.raises(ConfigMismatchError):
        estimate_pb(z, w, 1)
    other_seed = count_sketch(
        one_hot(hashed([1], k=1, b=1)), CountSketchConfig.create(B=4, seed=9)
    )
    with pytest.raises(ConfigMismatchError):
        z.dot(other_seed)


def test_reduction_factor():
    assert CountSketchConfig.create(B=256).reduction_factor(1024) == 4.0


def test_sketch_dump_round_trip(tmp_path):
    cfg = GcwsConfig.create(p=2.0, k=4, b=2, seed=5)
    cs = CountSketchConfig.create(B=6, seed=1)
    values = count_sketch_batch(one_hot_batch(np.array([[0, 1, 2, 3], [3, 3, 0, 0]]), cfg), cs)
    path = tmp_path / "x.sketch"
    write_sketch(path, cfg, cs, np.array([1.0, 0.0]), values)
    cfg2, cs2, labels, values2 = read_sketch(path)
    assert cfg2 == cfg and cs2 == cs
    assert labels.tolist() == [1.0, 0.0]
    assert np.array_equal(values2, values)


# ── estimator Monte Carlo ─────────────────────────────────────────────────


@pytest.mark.slow
def test_countsketch_estimator_mean_and_variance():
    report = check_countsketch(k=256, b=4, J=0.5, m=4, trials=10_000, seed=0, workers=1)
    assert report.theoretical == pytest.approx(0.53125)
    assert report.params["B"] == 1024
    assert report.se_band == 3.0 and report.mean_ok
    assert report.variance_ok


@pytest.mark.slow
def test_countsketch_conditional_variance():
    report = check_countsketch_conditional(k=64, a=32, B=256, trials=10_000, seed=1, workers=1)
    assert abs(report.empirical - 32) <= 4 * report.se
    assert report.var_theoretical == pytest.approx((64**2 + 32**2 - 64) / 256)
    assert report.variance_ok
