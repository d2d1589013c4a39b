"""Idealized ON/OFF retinal ganglion cell layer."""

from __future__ import annotations

import numpy as np

from mpath._numeric import below, open_tanh
from mpath.stats import DEFAULT_EPSILON, RunningStats

RETINA_TAU = 100.0


def on_off_response(delta_v):
    """Mirrored rectified tanh responses for a normalized deviation.

    Returns ``(on, off)``. At exactly zero deviation both are zero.
    """
    r = open_tanh(np.abs(delta_v))
    on = np.where(delta_v > 0, r, 0.0)
    off = np.where(delta_v > 0, 0.0, r)
    return on, off


class RetinaLayer:
    """Maps N raw channels to 2N graded, non-negative responses.

    Output layout is the ON block (channels 0..N-1) followed by the OFF block.
    Each channel is normalized against its own running statistics, so the
    layer adapts to both the mean and the spread of its input.

    ``gamma < 1`` adds a maintained discharge: each response ``r`` becomes
    ``gamma * r + (1 - gamma)``. Responses are then scaled by ``s_max``.
    """

    def __init__(
        self,
        channels: int,
        tau: float = RETINA_TAU,
        gamma: float = 1.0,
        s_max: float = 1.0,
        epsilon: float = DEFAULT_EPSILON,
        batch_shape: tuple[int, ...] = (),
    ):
        if channels < 1:
            raise ValueError("retina needs at least one channel")
        if not 0.0 < gamma <= 1.0:
            raise ValueError("gamma must lie in (0, 1]")
        if not s_max > 0:
            raise ValueError("s_max must be positive")
        self.channels = channels
        self.tau = float(tau)
        self.gamma = float(gamma)
        self.s_max = float(s_max)
        self.batch_shape = tuple(batch_shape)
        self.stats = RunningStats.from_tau(
            tau, shape=self.batch_shape + (channels,), epsilon=epsilon
        )

    @property
    def size(self) -> int:
        return 2 * self.channels

    def encode(self, values) -> np.ndarray:
        values = np.asarray(values, dtype=float)
        if values.shape[-1:] != (self.channels,):
            raise ValueError(
                f"expected {self.channels} input channels, got shape {values.shape}"
            )
        delta_v = self.stats.normalized_deviation(values)
        self.stats.update(values)

        out = np.concatenate(on_off_response(delta_v), axis=-1)
        if self.gamma < 1.0:
            out = np.minimum(self.gamma * out + (1.0 - self.gamma), below(1.0))
        if self.s_max != 1.0:
            out = np.minimum(out * self.s_max, below(self.s_max))
        return out
