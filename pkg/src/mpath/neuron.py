"""MPATH neurons: normalized membrane response, adaptive threshold, decaying rate.

A neuron's only free parameter is its membrane time constant ``tau_m``. The
threshold and activation-decay time constants default to ``tau_m / 10``.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from mpath._numeric import open_tanh, safe_exp
from mpath.plasticity import scale_rows
from mpath.stats import DEFAULT_EPSILON, RunningStats

TAU_RANGE = (5.0, 25.0)
THETA_RATIO = 0.1


def threshold(delta_v, tau_theta):
    """Activation threshold for a normalized deviation.

    Equals 1 at zero deviation, drops towards 0 for fast depolarization and
    rises above 1 (overflowing to inf) for hyperpolarization.
    """
    return safe_exp(-np.asarray(delta_v, dtype=float) / tau_theta)


def thresholded_activation(delta_v, tau_theta):
    """Membrane response minus threshold; the neuron fires where this is > 0."""
    return open_tanh(delta_v) - threshold(delta_v, tau_theta)


def firing_boundary(tau_theta: float, upper: float = 50.0, resolution: float = 1e-10) -> float:
    """Smallest normalized deviation at which a neuron fires, found by grid scan.

    Each pass evaluates a uniform grid over the current bracket and narrows it
    to the cell holding the first firing point.
    """
    lo, hi = 0.0, upper
    if not thresholded_activation(hi, tau_theta) > 0:
        raise ValueError(f"no firing below {upper}")
    while hi - lo > resolution:
        grid = np.linspace(lo, hi, 1001)
        first = int(np.argmax(thresholded_activation(grid, tau_theta) > 0))
        lo, hi = grid[max(first - 1, 0)], grid[first]
    return float(hi)


def spread_tau(size: int, low: float = TAU_RANGE[0], high: float = TAU_RANGE[1]):
    """Membrane time constants spaced evenly over ``[low, high]``, ascending."""
    if size == 1:
        return np.array([(low + high) / 2.0])
    return np.linspace(low, high, size)


@dataclass
class NeuronState:
    """Dynamic state of one neuron, or of many neurons as parallel arrays.

    Every field broadcasts against ``tau_m``: pass a scalar for a single
    neuron or an array for a whole layer (optionally with leading batch axes
    given by ``batch_shape``).
    """

    tau_m: float | np.ndarray
    tau_theta: float | np.ndarray | None = None
    tau_eta: float | np.ndarray | None = None
    batch_shape: tuple[int, ...] = ()
    leaky: bool = False
    epsilon: float = DEFAULT_EPSILON
    potential: np.ndarray = field(init=False)
    eta: np.ndarray = field(init=False)
    stats: RunningStats = field(init=False)

    def __post_init__(self):
        self.tau_m = np.asarray(self.tau_m, dtype=float)
        if not np.all(self.tau_m > 1.0):
            raise ValueError("tau_m must be > 1 step")
        if self.tau_theta is None:
            self.tau_theta = THETA_RATIO * self.tau_m
        self.tau_theta = np.asarray(self.tau_theta, dtype=float)
        if self.tau_eta is None:
            self.tau_eta = self.tau_theta
        self.tau_eta = np.asarray(self.tau_eta, dtype=float)
        if not (np.all(self.tau_theta > 0) and np.all(self.tau_eta > 0)):
            raise ValueError("tau_theta and tau_eta must be positive")
        shape = tuple(self.batch_shape) + self.tau_m.shape
        self.potential = np.zeros(shape)
        self.eta = np.zeros(shape)
        self.stats = RunningStats(1.0 / self.tau_m, shape=shape, epsilon=self.epsilon)
        self._membrane_decay = np.exp(-1.0 / self.tau_m)
        self._eta_decay = np.exp(-1.0 / self.tau_eta)

    def step(self, drive):
        """Advance one time step under ``drive`` and return the activation rate.

        By default the membrane potential is the instantaneous drive; with
        ``leaky=True`` it integrates ``V <- V * exp(-1/tau_m) + drive`` instead.
        Neurons that fire are reset to zero potential; the running statistics
        are not reset.
        """
        drive = np.asarray(drive, dtype=float)
        if self.leaky:
            self.potential = self.potential * self._membrane_decay + drive
        else:
            self.potential = np.broadcast_to(drive, self.potential.shape).copy()

        delta_v = self.stats.normalized_deviation(self.potential)
        self.stats.update(self.potential)

        rho_theta = thresholded_activation(delta_v, self.tau_theta)
        fired = rho_theta > 0
        self.eta = np.where(fired, rho_theta, self.eta * self._eta_decay)
        self.potential = np.where(fired, 0.0, self.potential)
        return self.eta


def init_weights(rng: np.random.Generator, n_out: int, n_in: int) -> np.ndarray:
    """Uniform(-1, 1) weights, rows scaled to unit norm."""
    return scale_rows(rng.uniform(-1.0, 1.0, size=(n_out, n_in)))


class DenseLayer:
    """Fully connected layer of MPATH neurons.

    ``weights`` has shape ``(..., n_out, n_in)``; any leading axes are batch
    axes and must match ``batch_shape``.
    """

    def __init__(
        self,
        weights: np.ndarray,
        tau_m=None,
        tau_theta=None,
        tau_eta=None,
        leaky: bool = False,
        epsilon: float = DEFAULT_EPSILON,
    ):
        self.weights = np.array(weights, dtype=float)
        if self.weights.ndim < 2:
            raise ValueError("weights must be at least 2-D")
        *batch, n_out, n_in = self.weights.shape
        self.n_in, self.n_out = n_in, n_out
        if tau_m is None:
            tau_m = spread_tau(n_out)
        tau_m = np.broadcast_to(np.asarray(tau_m, dtype=float), (n_out,))
        self.neurons = NeuronState(
            tau_m,
            tau_theta=tau_theta,
            tau_eta=tau_eta,
            batch_shape=tuple(batch),
            leaky=leaky,
            epsilon=epsilon,
        )
        self.zero_rows = 0

    @classmethod
    def random(cls, n_in: int, n_out: int, rng=None, **kwargs) -> "DenseLayer":
        rng = np.random.default_rng(rng)
        return cls(init_weights(rng, n_out, n_in), **kwargs)

    @property
    def tau_m(self) -> np.ndarray:
        return self.neurons.tau_m

    @property
    def eta(self) -> np.ndarray:
        return self.neurons.eta

    def drive(self, x) -> np.ndarray:
        x = np.asarray(x, dtype=float)
        if x.shape[-1:] != (self.n_in,):
            raise ValueError(f"expected input of length {self.n_in}, got shape {x.shape}")
        return np.matmul(self.weights, x[..., None])[..., 0]

    def forward(self, x) -> np.ndarray:
        return self.neurons.step(self.drive(x))
