"""Exponential running mean/variance and normalized deviation.

All arithmetic is elementwise, so a single :class:`RunningStats` can track a
scalar signal or a whole array of independent signals (one per channel or
neuron, optionally with a leading batch axis).
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

DEFAULT_EPSILON = 1e-6


def _check_finite(v):
    if not np.all(np.isfinite(v)):
        raise ValueError("input contains non-finite values")


@dataclass
class RunningStats:
    """Exponentially weighted mean and variance with decay ``alpha``.

    ``alpha`` may be a scalar or an array broadcastable to ``shape``; every
    entry must lie strictly inside (0, 1). State starts at zero mean and zero
    variance.
    """

    alpha: float | np.ndarray
    shape: tuple[int, ...] = ()
    epsilon: float = DEFAULT_EPSILON
    mean: np.ndarray = field(init=False)
    variance: np.ndarray = field(init=False)

    def __post_init__(self):
        alpha = np.asarray(self.alpha, dtype=float)
        if not np.all((alpha > 0.0) & (alpha < 1.0)):
            raise ValueError(f"alpha must lie in (0, 1), got {self.alpha!r}")
        if not self.epsilon > 0:
            raise ValueError("epsilon must be positive")
        self.alpha = alpha if alpha.ndim else float(alpha)
        self.shape = tuple(self.shape)
        self.mean = np.zeros(self.shape)
        self.variance = np.zeros(self.shape)

    @classmethod
    def from_tau(cls, tau, shape=(), epsilon=DEFAULT_EPSILON) -> "RunningStats":
        """Build from a membrane time constant (``alpha = 1 / tau``, tau > 1)."""
        tau = np.asarray(tau, dtype=float)
        if not np.all(tau > 1.0):
            raise ValueError("time constant must be > 1 step")
        return cls(alpha=1.0 / tau, shape=shape, epsilon=epsilon)

    @property
    def std(self) -> np.ndarray:
        return np.sqrt(self.variance)

    def normalized_deviation(self, v):
        """Deviation of ``v`` from the current mean in units of the current SD.

        The SD is floored at ``epsilon``. Pure: the tracked state is untouched,
        so read the deviation first and call :meth:`update` afterwards.
        """
        _check_finite(v)
        return (v - self.mean) / np.maximum(np.sqrt(self.variance), self.epsilon)

    def update(self, v):
        """Absorb ``v`` and return the new ``(mean, variance)``."""
        _check_finite(v)
        diff = v - self.mean
        # Right-hand variance is the previous step's value.
        self.variance = (1.0 - self.alpha) * (self.variance + self.alpha * diff * diff)
        self.mean = self.mean + self.alpha * diff
        return self.mean, self.variance
