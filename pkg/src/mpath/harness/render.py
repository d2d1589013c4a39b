"""Grayscale raster images of layer activity."""

from __future__ import annotations

from pathlib import Path

import numpy as np
from PIL import Image

from mpath.harness.trace import TraceStore


def raster_pixels(values: np.ndarray, vmax: float = 1.0, scale: int = 1) -> np.ndarray:
    """``(steps, neurons)`` activity -> ``(neurons, steps)`` uint8 image, brightness ~ value."""
    img = np.clip(np.asarray(values, dtype=float).T / vmax, 0.0, 1.0)
    img = np.rint(img * 255).astype(np.uint8)
    if scale > 1:
        img = np.kron(img, np.ones((scale, scale), dtype=np.uint8))
    return img


def render_raster(
    trace: TraceStore,
    layer: int,
    window: tuple[int, int],
    path,
    vmax: float | None = None,
    scale: int = 4,
) -> None:
    """Write a raster of ``layer`` over ``window``: x = step, y = neuron (0 at top).

    Format follows the file suffix (PNG, PGM, ...). ``vmax`` defaults to the
    layer's saturation level of 1.
    """
    values = trace.window(layer, *window)
    if vmax is None:
        vmax = 1.0
    pixels = raster_pixels(values, vmax, scale)
    path = Path(path)
    try:
        Image.fromarray(pixels).save(path)
    except (OSError, ValueError) as exc:
        raise OSError(f"cannot write raster {path}: {exc}") from exc
