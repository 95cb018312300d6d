"""
Tests for the closed-form count-sketch variances and the ratio R.
"""

import math

import numpy as np
import pytest

from gcwsnet.core import InvalidParameterError
from gcwsnet.sketch.variance import (
    RATIO_COLUMNS,
    collision_probability,
    cs_conditional_variance,
    cs_inner_variance,
    cs_ratio,
    cs_variance,
    j_grid,
    ratio_table,
    strategy_m,
)


def test_ratio_reference_values():
    assert cs_ratio(8, 0.5, 1) == pytest.approx(0.019562, abs=5e-7)
    assert cs_ratio(8, 0.5, 16) == pytest.approx(0.312994, abs=5e-7)


def test_ratio_sixteen_bits():
    P = 0.5 + 0.5 / 65536
    assert collision_probability(0.5, 16) == pytest.approx(P)
    assert cs_ratio(16, 0.5, 1000) == pytest.approx(0.0763, abs=5e-5)
    assert cs_ratio(16, 0.5, 1000) == pytest.approx((1000 / 65536) * (1 + P * P) / (P * (1 - P)))


@pytest.mark.parametrize("m", [2.0, 7.5, 100.0])
def test_ratio_is_linear_in_m(m):
    assert cs_ratio(6, 0.3, m) == pytest.approx(m * cs_ratio(6, 0.3, 1))


def test_ratio_degenerate_probability_is_inf():
    assert math.isinf(cs_ratio(4, 1.0, 2))


@pytest.mark.parametrize("J", [0.5, 0.8, 0.9])
def test_eight_bit_strategy_curves_nearly_coincide(J):
    values = [cs_ratio(b, J, strategy_m(b, "eight_bits")) for b in (8, 12, 16)]
    assert max(values) / min(values) - 1 < 0.01


def test_variance_without_sketch_is_binomial():
    P, k = 0.6, 128
    assert cs_variance(P, k, math.inf) == pytest.approx(P * (1 - P) / k)


def test_inner_variance_scales_to_estimator_variance():
    P, k, B = 0.4, 64, 500
    assert cs_inner_variance(P, k, B) / k**2 == pytest.approx(cs_variance(P, k, B))


def test_conditional_variance_identical_inputs():
    assert cs_conditional_variance(10, 10, 20) == pytest.approx((100 + 100 - 20) / 20)


@pytest.mark.parametrize(
    "call",
    [
        lambda: cs_conditional_variance(11, 10, 20),
        lambda: cs_variance(1.5, 10, 20),
        lambda: cs_variance(0.5, 0, 20),
        lambda: cs_ratio(8, 0.5, 0),
        lambda: collision_probability(-0.1, 2),
        lambda: strategy_m(4, "eight_bits"),
        lambda: strategy_m(4, "fixed"),
        lambda: strategy_m(4, "thirds"),
    ],
)
def test_bad_arguments(call):
    with pytest.raises(InvalidParameterError):
        call()


def test_ratio_table_shape():
    table = ratio_table([8, 12], [0.25, 0.5], strategy="half_bits")
    assert list(table.columns) == RATIO_COLUMNS
    assert len(table) == 4
    assert table["m"].tolist() == [16.0, 16.0, 64.0, 64.0]

    fixed = ratio_table([8], j_grid(10), m_list=[1, 4])
    assert len(fixed) == 20
    assert fixed["R"].iloc[10] == pytest.approx(4 * fixed["R"].iloc[0])


def test_j_grid():
    grid = j_grid(100)
    assert grid.size == 100
    assert grid[0] == pytest.approx(0.01) and grid[-1] == 1.0
    assert np.all(np.diff(grid) > 0)
