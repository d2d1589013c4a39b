import math

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from mpath.neuron import (
    DenseLayer,
    NeuronState,
    firing_boundary,
    spread_tau,
    threshold,
    thresholded_activation,
)
from oracles import bisect_firing_boundary, scalar_neuron

X_STAR = 0.6093778634  # tanh(x) = exp(-x), bisection to 1e-10


def test_threshold_examples():
    assert threshold(0.0, 3.0) == 1.0
    assert threshold(2.0, 2.0) == pytest.approx(math.exp(-1))
    assert threshold(-1.0, 1.0) == pytest.approx(math.e)


def test_threshold_overflow_is_infinite_not_error():
    with np.errstate(all="raise"):
        assert threshold(-1e6, 0.5) == math.inf


@given(a=st.floats(-30, 30), b=st.floats(-30, 30), tau=st.floats(0.1, 10))
def test_threshold_monotone(a, b, tau):
    if a < b:
        assert threshold(a, tau) >= threshold(b, tau)


def test_defaults_follow_membrane_constant():
    n = NeuronState(20.0)
    assert n.tau_theta == pytest.approx(2.0)
    assert n.tau_eta == n.tau_theta
    assert n.tau_theta * 10 == pytest.approx(n.tau_m)


def test_rejects_short_time_constant():
    with pytest.raises(ValueError):
        NeuronState(1.0)


def test_zero_deviation_does_not_fire():
    assert thresholded_activation(0.0, 1.0) == -1.0
    n = NeuronState(10.0)
    n.eta = np.float64(0.5)
    n.stats.mean, n.stats.variance = np.float64(2.0), np.float64(1.0)
    eta = n.step(2.0)
    assert eta == pytest.approx(0.5 * math.exp(-1.0))


def test_firing_boundary_matches_bisection():
    assert bisect_firing_boundary(1.0) == pytest.approx(X_STAR, abs=1e-10)
    assert firing_boundary(1.0) == pytest.approx(X_STAR, abs=1e-9)


@given(x=st.floats(0, 5))
def test_firing_set_is_open_half_line(x):
    fires = thresholded_activation(x, 1.0) > 0
    assert fires == (x > X_STAR) or abs(x - X_STAR) < 1e-9


@given(x=st.floats(-1e6, 1e6), tau=st.floats(0.1, 10))
def test_thresholded_activation_below_one(x, tau):
    assert thresholded_activation(x, tau) < 1.0


def test_eta_decay_over_silent_steps():
    n = NeuronState(20.0, tau_theta=2.0, tau_eta=2.0)
    n.eta = np.float64(0.5)
    n.stats.mean, n.stats.variance = np.float64(0.0), np.float64(1.0)
    for _ in range(3):
        n.step(0.0)
    assert n.eta == pytest.approx(0.5 * math.exp(-1.5))


def test_reset_after_firing():
    n = NeuronState(10.0)
    n.stats.variance = np.float64(1.0)
    eta = n.step(5.0)
    assert eta > 0
    assert n.potential == 0.0


def test_running_stats_survive_reset():
    n = NeuronState(10.0)
    n.stats.variance = np.float64(1.0)
    n.step(5.0)
    assert n.stats.mean == pytest.approx(0.5)


@given(drives=st.lists(st.floats(-1e4, 1e4), max_size=80), tau=st.floats(1.5, 40))
def test_eta_in_unit_interval(drives, tau):
    n = NeuronState(tau)
    for d in drives:
        eta = n.step(d)
        assert 0.0 <= eta < 1.0


@given(drives=st.lists(st.floats(-100, 100), min_size=1, max_size=60), tau=st.sampled_from([5.0, 12.5, 25.0]))
def test_matches_scalar_reference(drives, tau):
    n = NeuronState(tau)
    got = [float(n.step(d)) for d in drives]
    np.testing.assert_allclose(got, scalar_neuron(drives, tau), rtol=1e-12, atol=1e-300)


def test_spread_tau():
    np.testing.assert_allclose(spread_tau(5), [5, 10, 15, 20, 25])
    np.testing.assert_allclose(spread_tau(1), [15])


def test_layer_shapes_and_default_taus():
    layer = DenseLayer.random(6, 4, rng=0)
    assert layer.weights.shape == (4, 6)
    np.testing.assert_allclose(np.linalg.norm(layer.weights, axis=1), 1.0)
    np.testing.assert_allclose(layer.tau_m, spread_tau(4))
    with pytest.raises(ValueError):
        layer.forward(np.zeros(5))


def test_identity_layer_zero_input():
    layer = DenseLayer(np.eye(2))
    np.testing.assert_array_equal(layer.forward(np.zeros(2)), [0, 0])


def test_zero_weights_never_fire():
    layer = DenseLayer(np.zeros((3, 4)))
    rng = np.random.default_rng(1)
    for _ in range(100):
        assert not layer.forward(rng.normal(size=4)).any()


def test_constant_drive_goes_silent():
    layer = DenseLayer(np.ones((1, 1)), tau_m=10.0)
    etas = [float(layer.forward([1.0])[0]) for _ in range(200)]
    ref = scalar_neuron([1.0] * 200, 10.0)
    np.testing.assert_allclose(etas, ref, rtol=1e-12)
    tail = etas[50:]
    assert max(tail) < 1e-6
    assert all(b < a for a, b in zip(tail, tail[1:]))


def test_leaky_membrane_keeps_firing_on_constant_drive():
    # Leaky integration with reset locks into a period-2 firing cycle.
    n = NeuronState(10.0, leaky=True)
    etas = [float(n.step(1.0)) for _ in range(300)]
    assert max(etas[-20:]) > 0.1


def test_batched_layer_matches_unbatched():
    rng = np.random.default_rng(3)
    W = rng.uniform(-1, 1, size=(2, 3, 5))
    batched = DenseLayer(W)
    singles = [DenseLayer(W[0]), DenseLayer(W[1])]
    for _ in range(50):
        x = rng.normal(size=(2, 5))
        out = batched.forward(x)
        for b, layer in enumerate(singles):
            np.testing.assert_allclose(out[b], layer.forward(x[b]), rtol=1e-12)
