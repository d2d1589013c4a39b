import math

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from mpath.stats import RunningStats

finite = st.floats(-1e3, 1e3, allow_nan=False)
alphas = st.floats(0.001, 0.999)


def stats_at(mean, var, alpha=0.1, epsilon=1e-6):
    s = RunningStats(alpha, epsilon=epsilon)
    s.mean, s.variance = np.float64(mean), np.float64(var)
    return s


def test_initial_state_is_zero():
    s = RunningStats(0.1)
    assert s.mean == 0 and s.variance == 0


@pytest.mark.parametrize("alpha", [0.0, 1.0, -0.5, 1.5])
def test_rejects_alpha_outside_open_unit_interval(alpha):
    with pytest.raises(ValueError):
        RunningStats(alpha)


def test_from_tau():
    assert RunningStats.from_tau(100).alpha == pytest.approx(0.01)
    with pytest.raises(ValueError):
        RunningStats.from_tau(1.0)


def test_first_update():
    s = RunningStats(0.1)
    mean, var = s.update(1.0)
    assert mean == pytest.approx(0.1)
    assert var == pytest.approx(0.09)


def test_constant_input_fixed_point():
    s = stats_at(2.5, 0.0, alpha=0.3)
    assert s.update(2.5) == (2.5, 0.0)


@pytest.mark.parametrize("v", [math.nan, math.inf, -math.inf])
def test_rejects_non_finite(v):
    s = RunningStats(0.1)
    with pytest.raises(ValueError):
        s.update(v)
    with pytest.raises(ValueError):
        s.normalized_deviation(v)


@pytest.mark.parametrize(
    "mean, var, v, expected",
    [(0.0, 1.0, 3.0, 3.0), (2.0, 0.0, 2.0, 0.0), (1.0, 4.0, 0.0, -0.5)],
)
def test_normalized_deviation_examples(mean, var, v, expected):
    assert stats_at(mean, var).normalized_deviation(v) == pytest.approx(expected)


def test_zero_variance_gives_large_finite_deviation():
    d = stats_at(0.0, 0.0).normalized_deviation(1.0)
    assert np.isfinite(d) and d == pytest.approx(1e6)


@given(alpha=alphas, mean=finite, var=st.floats(0, 1e3))
def test_update_at_mean_contracts_variance(alpha, mean, var):
    s = stats_at(mean, var, alpha)
    s.update(mean)
    assert s.mean == mean
    assert s.variance == pytest.approx((1 - alpha) * var)


@given(alpha=alphas, c=finite, k=st.integers(1, 200))
def test_geometric_convergence_to_constant(alpha, c, k):
    s = RunningStats(alpha)
    for _ in range(k):
        s.update(c)
    assert abs(s.mean - c) == pytest.approx((1 - alpha) ** k * abs(c), rel=1e-9, abs=1e-9)


@given(alpha=alphas, stream=st.lists(finite, max_size=100))
def test_variance_never_negative(alpha, stream):
    s = RunningStats(alpha)
    for v in stream:
        s.update(v)
        assert s.variance >= 0


@given(mean=finite, var=st.floats(0, 1e3), v=finite)
def test_normalized_deviation_is_pure(mean, var, v):
    s = stats_at(mean, var)
    assert s.normalized_deviation(v) == s.normalized_deviation(v)
    assert (s.mean, s.variance) == (mean, var)


def test_elementwise_over_arrays():
    s = RunningStats(np.array([0.1, 0.5]), shape=(2,))
    s.update(np.array([1.0, 1.0]))
    np.testing.assert_allclose(s.mean, [0.1, 0.5])
    np.testing.assert_allclose(s.variance, [0.09, 0.25])


@pytest.mark.slow
def test_monte_carlo_tracks_mean_and_sd():
    # 100 seeded streams of N(5, 2); alpha = 0.01 after 10,000 samples.
    hits = 0
    for seed in range(100):
        s = RunningStats(0.01)
        for v in np.random.default_rng(seed).normal(5.0, 2.0, 10_000):
            s.update(v)
        hits += abs(s.mean - 5) <= 0.5 and abs(math.sqrt(s.variance) - 2) <= 0.5
    assert hits >= 95
