"""Feed-forward stack: retina followed by dense MPATH layers."""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass, field
from typing import Sequence

import numpy as np

from mpath.neuron import TAU_RANGE, THETA_RATIO, DenseLayer, init_weights, spread_tau
from mpath.plasticity import LearningSchedule, learn_step
from mpath.retina import RETINA_TAU, RetinaLayer

# Sub-seed stream ids; stimulus noise uses the run seed directly.
WEIGHTS_STREAM = 1


def derive_seed(seed: int, *path: int) -> int:
    """Independent 64-bit sub-seed for a component identified by ``path``."""
    ss = np.random.SeedSequence([seed, *path])
    return int(ss.generate_state(1, dtype=np.uint64)[0])


@dataclass
class Network:
    retina: RetinaLayer
    layers: list[DenseLayer]
    schedules: list[LearningSchedule]
    diagnostics: Counter = field(default_factory=Counter)

    def __post_init__(self):
        if len(self.schedules) != len(self.layers):
            raise ValueError("need one learning schedule per dense layer")
        width = self.retina.size
        for k, layer in enumerate(self.layers, start=1):
            if layer.n_in != width:
                raise ValueError(
                    f"layer {k} expects {layer.n_in} inputs but receives {width}"
                )
            width = layer.n_out

    @property
    def sizes(self) -> list[int]:
        return [self.retina.size] + [layer.n_out for layer in self.layers]

    def step(self, values, learn: bool = False) -> list[np.ndarray]:
        """Advance every layer by one step; returns ``[retina, layer1, ...]`` outputs.

        With ``learn`` set, each layer is trained right after its own forward
        pass on that step's input and output.
        """
        x = self.retina.encode(values)
        outputs = [x]
        for layer, schedule in zip(self.layers, self.schedules):
            y = layer.forward(x)
            if learn:
                learn_step(layer, x, y, schedule, self.diagnostics)
            outputs.append(y)
            x = y
        return outputs


def network_step(net: Network, values, learn: bool = False) -> list[np.ndarray]:
    return net.step(values, learn)


def build_network(
    channels: int = 30,
    layer_sizes: Sequence[int] = (20, 10),
    seeds: int | Sequence[int] = 0,
    retina_tau: float = RETINA_TAU,
    tau_range: tuple[float, float] = TAU_RANGE,
    theta_ratio: float = THETA_RATIO,
    eta_ratio: float = 1.0,
    gamma: float = 1.0,
    s_max: float = 1.0,
    leaky: bool = False,
    schedule: dict | None = None,
) -> Network:
    """Build the default retina + dense stack.

    ``seeds`` may be a single seed or a sequence of seeds; a sequence builds a
    batched network whose arrays carry a leading axis of that length, one
    independent simulation per seed. ``eta_ratio`` sets the activation decay
    constant as a multiple of the threshold constant.
    """
    batched = not isinstance(seeds, (int, np.integer))
    seed_list = list(seeds) if batched else [int(seeds)]
    batch_shape = (len(seed_list),) if batched else ()

    retina = RetinaLayer(channels, tau=retina_tau, gamma=gamma, s_max=s_max,
                         batch_shape=batch_shape)
    layers, n_in = [], retina.size
    for k, n_out in enumerate(layer_sizes):
        ws = [
            init_weights(np.random.default_rng(derive_seed(s, WEIGHTS_STREAM, k)), n_out, n_in)
            for s in seed_list
        ]
        weights = np.stack(ws) if batched else ws[0]
        tau_m = spread_tau(n_out, *tau_range)
        tau_theta = theta_ratio * tau_m
        layers.append(
            DenseLayer(weights, tau_m=tau_m, tau_theta=tau_theta,
                       tau_eta=eta_ratio * tau_theta, leaky=leaky)
        )
        n_in = n_out
    schedules = [LearningSchedule(**(schedule or {})) for _ in layers]
    return Network(retina, layers, schedules)
