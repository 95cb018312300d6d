"""
Tests for the power and log-power preprocessors.
"""

import math

import pytest

from gcwsnet.core import (
    InvalidParameterError,
    PowerOverflowError,
    SparseVector,
    logpower_transform,
    power_transform,
    sign_split,
)


def test_power_square():
    assert power_transform(SparseVector.from_dense([47.0]), 2.0).values.tolist() == [2209.0]


def test_one_is_a_fixed_point():
    u = SparseVector.from_dense([1.0])
    assert power_transform(u, 37.0).values.tolist() == [1.0]
    assert logpower_transform(u, 37.0).nnz == 0


def test_power_overflow_reports_row():
    with pytest.raises(PowerOverflowError) as exc:
        power_transform(SparseVector.from_dense([1e4]), 80.0, row=7)
    assert exc.value.row == 7
    assert "row 7" in str(exc.value)


def test_logpower_large_p():
    t = logpower_transform(SparseVector.from_dense([1e4]), 80.0)
    assert t.values[0] == pytest.approx(80 * math.log(1e4))
    assert t.values[0] == pytest.approx(736.827, abs=1e-3)


def test_zeros_stay_zero():
    t = sign_split(SparseVector.from_dense([0.0, -2.0, 3.0]))
    assert power_transform(t, 2.0).indices.tolist() == t.indices.tolist()
    assert logpower_transform(t, 2.0).indices.tolist() == t.indices.tolist()


def test_negative_values_rejected():
    with pytest.raises(InvalidParameterError):
        power_transform(SparseVector.from_dense([-1.0]), 2.0)


def test_zero_p_rejected():
    with pytest.raises(InvalidParameterError):
        logpower_transform(SparseVector.from_dense([2.0]), 0.0)
