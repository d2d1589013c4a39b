"""Recorded activations, weight snapshots and their CSV forms."""

from __future__ import annotations

import csv
from dataclasses import dataclass, field
from pathlib import Path

import numpy as np

STIMULUS_LAYER = -1
HEADER = ("step", "layer", "neuron", "value")


@dataclass
class TraceStore:
    """Per-step activations of every layer plus the stimulus.

    ``layers[0]`` is the retina, ``layers[k]`` dense layer ``k``; each array has
    shape ``(steps, size)``. ``snapshots`` maps a step count to the list of
    dense-layer weight matrices after that many steps.
    """

    stimulus: np.ndarray
    layers: list[np.ndarray]
    snapshots: dict[int, list[np.ndarray]] = field(default_factory=dict)
    tau_m: list[np.ndarray] = field(default_factory=list)
    learning: np.ndarray | None = None

    @classmethod
    def allocate(cls, steps: int, channels: int, sizes: list[int]) -> "TraceStore":
        return cls(
            stimulus=np.zeros((steps, channels)),
            layers=[np.zeros((steps, n)) for n in sizes],
            learning=np.zeros(steps, dtype=bool),
        )

    @property
    def steps(self) -> int:
        return self.stimulus.shape[0]

    def record(self, t: int, stimulus, outputs, learn: bool = False) -> None:
        self.stimulus[t] = stimulus
        for store, out in zip(self.layers, outputs):
            store[t] = out
        if self.learning is not None:
            self.learning[t] = learn

    def layer(self, index: int) -> np.ndarray:
        if index == STIMULUS_LAYER:
            return self.stimulus
        if not 0 <= index < len(self.layers):
            raise IndexError(f"no layer {index}; trace has layers 0..{len(self.layers) - 1}")
        return self.layers[index]

    def window(self, index: int, start: int, stop: int) -> np.ndarray:
        if not 0 <= start < stop <= self.steps:
            raise ValueError(f"window [{start}, {stop}) outside trace of {self.steps} steps")
        return self.layer(index)[start:stop]


def _open_for_write(path: Path):
    try:
        return path.open("w", newline="", encoding="utf-8")
    except OSError as exc:
        raise OSError(f"cannot write {path}: {exc.strerror}") from exc


def export_csv(trace: TraceStore, path) -> None:
    """Write ``step,layer,neuron,value`` rows; stimulus rows use layer -1.

    Values are written with ``repr`` so they parse back bit-exactly.
    """
    path = Path(path)
    blocks = [(STIMULUS_LAYER, trace.stimulus)] + list(enumerate(trace.layers))
    with _open_for_write(path) as fh:
        fh.write(",".join(HEADER) + "\n")
        for t in range(trace.steps):
            lines = []
            for layer, arr in blocks:
                row = arr[t].tolist()
                lines.extend(f"{t},{layer},{i},{v!r}\n" for i, v in enumerate(row))
            fh.writelines(lines)


def export_weights(trace: TraceStore, path) -> None:
    """Weight snapshots as ``step,layer,row,col,value`` (dense layers from 1)."""
    path = Path(path)
    with _open_for_write(path) as fh:
        fh.write("step,layer,row,col,value\n")
        for step in sorted(trace.snapshots):
            for k, W in enumerate(trace.snapshots[step], start=1):
                for (r, c), v in np.ndenumerate(W):
                    fh.write(f"{step},{k},{r},{c},{float(v)!r}\n")


def export_tau(trace: TraceStore, path) -> None:
    path = Path(path)
    with _open_for_write(path) as fh:
        fh.write("layer,neuron,tau_m\n")
        for k, taus in enumerate(trace.tau_m, start=1):
            for i, tau in enumerate(taus.tolist()):
                fh.write(f"{k},{i},{tau!r}\n")


def sidecar(path, kind: str) -> Path:
    path = Path(path)
    return path.with_name(f"{path.stem}.{kind}.csv")


def _rows(path: Path):
    try:
        with path.open(newline="", encoding="utf-8") as fh:
            reader = csv.reader(fh)
            header = next(reader, None)
            return header, list(reader)
    except OSError as exc:
        raise OSError(f"cannot read {path}: {exc.strerror}") from exc


def read_csv(path, weights: bool = True) -> TraceStore:
    """Parse an exported trace; weight snapshots are loaded from the sidecar if present."""
    path = Path(path)
    header, rows = _rows(path)
    if tuple(header or ()) != HEADER:
        raise ValueError(f"{path}: expected header {','.join(HEADER)}")
    sizes: dict[int, int] = {}
    steps = 0
    for step, layer, neuron, _ in rows:
        layer_i = int(layer)
        sizes[layer_i] = max(sizes.get(layer_i, 0), int(neuron) + 1)
        steps = max(steps, int(step) + 1)
    n_layers = max((k for k in sizes if k >= 0), default=-1) + 1
    trace = TraceStore(
        stimulus=np.zeros((steps, sizes.get(STIMULUS_LAYER, 0))),
        layers=[np.zeros((steps, sizes.get(k, 0))) for k in range(n_layers)],
    )
    for step, layer, neuron, value in rows:
        trace.layer(int(layer))[int(step), int(neuron)] = float(value)

    wpath = sidecar(path, "weights")
    if weights and wpath.exists():
        trace.snapshots = read_weights(wpath)
    return trace


def read_weights(path) -> dict[int, list[np.ndarray]]:
    path = Path(path)
    _, rows = _rows(path)
    shapes: dict[tuple[int, int], tuple[int, int]] = {}
    for step, layer, r, c, _ in rows:
        key = (int(step), int(layer))
        h, w = shapes.get(key, (0, 0))
        shapes[key] = (max(h, int(r) + 1), max(w, int(c) + 1))
    mats = {key: np.zeros(shape) for key, shape in shapes.items()}
    for step, layer, r, c, v in rows:
        mats[int(step), int(layer)][int(r), int(c)] = float(v)
    snapshots: dict[int, list[np.ndarray]] = {}
    for step, layer in sorted(mats):
        snapshots.setdefault(step, []).append(mats[step, layer])
    return snapshots
