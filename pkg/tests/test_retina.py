import math

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from mpath.retina import RetinaLayer, on_off_response


def primed(n=1, mean=0.0, var=1.0, **kw):
    r = RetinaLayer(n, **kw)
    r.stats.mean = np.full(n, mean)
    r.stats.variance = np.full(n, var)
    return r


def test_cold_start_zero_input_is_silent():
    out = RetinaLayer(5).encode(np.zeros(5))
    np.testing.assert_array_equal(out, np.zeros(10))


def test_mirror_responses():
    on = primed().encode([1.0])
    np.testing.assert_allclose(on, [math.tanh(1), 0.0])
    off = primed().encode([-1.0])
    np.testing.assert_allclose(off, [0.0, math.tanh(1)])


def test_zero_deviation_both_pathways_zero():
    on, off = on_off_response(np.array([0.0]))
    assert on[0] == 0 and off[0] == 0


def test_baseline_discharge_limit():
    out = primed(gamma=0.8).encode([10.0])
    assert out[0] == pytest.approx(0.8 * math.tanh(10) + 0.2)
    assert out[0] == pytest.approx(1.0, abs=1e-8)
    assert out[1] == pytest.approx(0.2)


def test_s_max_scales_output():
    out = primed(s_max=50.0).encode([1.0])
    assert out[0] == pytest.approx(50 * math.tanh(1))


def test_length_mismatch():
    with pytest.raises(ValueError):
        RetinaLayer(3).encode(np.zeros(4))


def test_stats_updated_after_reading_deviation():
    r = RetinaLayer(1, tau=10)
    r.encode([1.0])
    assert r.stats.mean[0] == pytest.approx(0.1)


@given(n=st.integers(1, 64))
def test_output_doubles_channels(n):
    assert RetinaLayer(n).encode(np.ones(n)).shape == (2 * n,)


@given(x=st.floats(-50, 50), var=st.floats(0, 10))
def test_mirror_antisymmetry(x, var):
    a = primed(var=var).encode([x])
    b = primed(var=var).encode([-x])
    np.testing.assert_array_equal(a, b[::-1])
    assert np.count_nonzero(a) <= 1


@given(x=st.floats(-50, 50), mean=st.floats(-5, 5), var=st.floats(0.01, 10))
def test_mirror_antisymmetry_shifted_mean(x, mean, var):
    a = primed(mean=mean, var=var).encode([mean + x])
    b = primed(mean=mean, var=var).encode([mean - x])
    np.testing.assert_allclose(a, b[::-1], atol=1e-9)


@given(
    values=st.lists(st.floats(-1e6, 1e6), min_size=1, max_size=50),
    gamma=st.floats(0.05, 1.0),
    s_max=st.floats(0.1, 100.0),
)
def test_output_in_half_open_range(values, gamma, s_max):
    r = RetinaLayer(1, gamma=gamma, s_max=s_max)
    for v in values:
        out = r.encode([v])
        assert np.all(out >= 0) and np.all(out < s_max)


@given(c=st.floats(-100, 100).filter(lambda c: abs(c) > 1e-3))
def test_constant_input_responses_decay(c):
    r = RetinaLayer(1, tau=10)
    outs = [r.encode([c]).sum() for _ in range(60)]
    assert all(b <= a for a, b in zip(outs[1:], outs[2:]))
    assert outs[-1] < 0.05
