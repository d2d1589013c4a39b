"""Generalized Hebbian learning with synaptic scaling."""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass

import numpy as np


def ghl_delta(W, x, y, rate):
    """Sanger's generalized Hebbian update ``rate * (y x^T - LT[y y^T] W)``.

    ``LT`` keeps the lower triangle including the diagonal, so a single output
    neuron reduces to Oja's rule. Leading axes of all arguments broadcast as
    batch axes. ``W`` is not modified.
    """
    W = np.asarray(W, dtype=float)
    x = np.asarray(x, dtype=float)
    y = np.asarray(y, dtype=float)
    if W.shape[-2:] != (y.shape[-1], x.shape[-1]):
        raise ValueError(
            f"weights {W.shape} incompatible with x {x.shape} and y {y.shape}"
        )
    hebb = y[..., :, None] * x[..., None, :]
    decorrelate = np.tril(y[..., :, None] * y[..., None, :]) @ W
    return np.asarray(rate)[..., None, None] * (hebb - decorrelate)


def scale_rows(W, diagnostics: Counter | None = None):
    """Divide every row by its Euclidean norm.

    Zero rows are left as they are and counted under ``"zero_norm_rows"`` in
    ``diagnostics`` when one is given.
    """
    W = np.asarray(W, dtype=float)
    norms = np.linalg.norm(W, axis=-1, keepdims=True)
    dead = norms == 0.0
    if diagnostics is not None and dead.any():
        diagnostics["zero_norm_rows"] += int(dead.sum())
    return W / np.where(dead, 1.0, norms)


@dataclass
class LearningSchedule:
    """Learning rate decayed by ``decay_factor`` every ``decay_interval`` steps."""

    initial_rate: float = 0.05
    decay_factor: float = 0.99
    decay_interval: int = 10
    steps: int = 0

    def __post_init__(self):
        if not self.initial_rate > 0:
            raise ValueError("initial_rate must be positive")
        if not 0.0 < self.decay_factor < 1.0:
            raise ValueError("decay_factor must lie in (0, 1)")
        if self.decay_interval < 1:
            raise ValueError("decay_interval must be >= 1")

    @property
    def rate(self) -> float:
        return self.initial_rate * self.decay_factor ** (self.steps // self.decay_interval)

    def advance(self) -> None:
        self.steps += 1


def learn_step(layer, x, y, schedule: LearningSchedule, diagnostics: Counter | None = None):
    """One GHL update of ``layer.weights`` followed by row scaling."""
    updated = layer.weights + ghl_delta(layer.weights, x, y, schedule.rate)
    layer.weights = scale_rows(updated, diagnostics)
    schedule.advance()
