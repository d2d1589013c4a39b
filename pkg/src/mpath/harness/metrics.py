"""Scalar summaries of recorded traces."""

from __future__ import annotations

import numpy as np

from mpath.harness.trace import TraceStore


def near_flash(steps, flash_interval: int, radius: int = 1) -> np.ndarray:
    """Mask of steps within ``radius`` of a flash (flashes at positive multiples of the interval)."""
    steps = np.asarray(steps)
    mask = np.zeros(steps.shape, dtype=bool)
    for d in range(-radius, radius + 1):
        f = steps + d
        mask |= (f > 0) & (f % flash_interval == 0)
    return mask


def flash_locking_index(
    trace: TraceStore, layer: int, window: tuple[int, int], flash_interval: int = 10
) -> float:
    """Share of the layer's activation mass within one step of a flash.

    Zero when the layer is silent over the window.
    """
    start, stop = window
    if stop <= start:
        raise ValueError("empty window")
    eta = trace.window(layer, start, stop)
    total = eta.sum()
    if total == 0:
        return 0.0
    mask = near_flash(np.arange(start, stop), flash_interval)
    return float(eta[mask].sum() / total)


def phase_profile(trace: TraceStore, layer: int, window: tuple[int, int], period: int) -> np.ndarray:
    """Mean activation per (phase, neuron), folding absolute steps modulo ``period``."""
    start, stop = window
    if (stop - start) % period:
        raise ValueError(f"window length {stop - start} is not a multiple of {period}")
    eta = trace.window(layer, start, stop)
    phases = np.arange(start, stop) % period
    return np.stack([eta[phases == p].mean(axis=0) for p in range(period)])


def pattern_similarity(
    trace: TraceStore,
    layer: int,
    window_a: tuple[int, int],
    window_b: tuple[int, int],
    period: int = 4,
) -> float:
    """Cosine similarity of the phase-folded activation profiles of two windows."""
    a = phase_profile(trace, layer, window_a, period).ravel()
    b = phase_profile(trace, layer, window_b, period).ravel()
    norm = np.linalg.norm(a) * np.linalg.norm(b)
    if norm == 0:
        return 0.0
    return float(np.dot(a, b) / norm)


def weight_drift(snapshots: dict[int, list[np.ndarray]], a: int, b: int, layer: int | None = None) -> float:
    """Relative Frobenius change ``|W_b - W_a| / |W_a|``.

    ``layer`` picks one dense layer (1-based); by default all dense layers are
    pooled.
    """
    for step in (a, b):
        if step not in snapshots:
            raise KeyError(f"no weight snapshot at step {step}")
    if layer is None:
        wa = np.concatenate([w.ravel() for w in snapshots[a]])
        wb = np.concatenate([w.ravel() for w in snapshots[b]])
    else:
        wa, wb = snapshots[a][layer - 1].ravel(), snapshots[b][layer - 1].ravel()
    return float(np.linalg.norm(wb - wa) / np.linalg.norm(wa))
