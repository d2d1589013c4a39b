"""Drive a network through a configured stimulus schedule and record it."""

from __future__ import annotations

from typing import Iterator, Sequence

import numpy as np

from mpath.harness.config import ExperimentConfig
from mpath.harness.trace import TraceStore
from mpath.network import Network, build_network, derive_seed
from mpath.stimuli import Grating, NoiseFlash, Phase, Phased

STIMULUS_STREAM = 0


def build_program(cfg: ExperimentConfig, seed: int) -> Phased:
    n = cfg.network.channels
    nz = cfg.noise
    noise = NoiseFlash(
        n,
        seed=derive_seed(seed, STIMULUS_STREAM),
        noise_mean=nz.mean,
        noise_sd=nz.sd,
        flash_magnitude=nz.flash_magnitude,
        flash_interval=nz.flash_interval,
        flash_range=tuple(nz.flash_range) if nz.flash_range is not None else None,
    )
    g = cfg.grating
    grating = Grating(n, g.low, g.high, g.spatial_period, g.temporal_period)
    kinds = {"noise": noise, "grating": grating}
    return Phased(tuple(Phase(p.steps, kinds[p.stimulus]) for p in cfg.schedule()))


def build(cfg: ExperimentConfig, seeds: int | Sequence[int]) -> Network:
    net = cfg.network
    return build_network(
        channels=net.channels,
        layer_sizes=net.layer_sizes,
        seeds=seeds,
        retina_tau=net.retina_tau,
        tau_range=tuple(net.tau_range),
        theta_ratio=net.theta_ratio,
        eta_ratio=net.eta_ratio,
        gamma=net.gamma,
        s_max=net.s_max,
        leaky=net.leaky,
        schedule=vars(cfg.learning).copy(),
    )


def learn_flags(cfg: ExperimentConfig) -> np.ndarray:
    return np.concatenate(
        [np.full(p.steps, p.learn, dtype=bool) for p in cfg.schedule()] + [np.zeros(0, bool)]
    )


def iter_run(
    cfg: ExperimentConfig, seeds: int | Sequence[int], net: Network | None = None
) -> Iterator[tuple[int, np.ndarray, list[np.ndarray], bool, Network]]:
    """Yield ``(t, stimulus, outputs, learn, net)`` after every step.

    ``seeds`` may be a sequence, in which case all runs advance together and
    every array carries a leading seed axis. A prebuilt ``net`` must match
    ``seeds``; it is built from the config when omitted.
    """
    cfg.validate()
    batched = not isinstance(seeds, (int, np.integer))
    seed_list = list(seeds) if batched else [int(seeds)]
    programs = [build_program(cfg, s) for s in seed_list]
    if net is None:
        net = build(cfg, seeds)
    flags = learn_flags(cfg)
    for t in range(cfg.duration):
        if batched:
            x = np.stack([p.sample(t) for p in programs])
        else:
            x = programs[0].sample(t)
        learn = bool(flags[t])
        outputs = net.step(x, learn)
        yield t, x, outputs, learn, net


def _new_trace(cfg: ExperimentConfig, net: Network) -> TraceStore:
    trace = TraceStore.allocate(cfg.duration, cfg.network.channels, net.sizes)
    trace.tau_m = [layer.tau_m.copy() for layer in net.layers]
    return trace


def run_batch(cfg: ExperimentConfig, seeds: Sequence[int]) -> list[TraceStore]:
    """One trace per seed, simulated as a single batched network."""
    seeds = list(seeds)
    snap_steps = set(cfg.output.snapshot_steps)
    net = build(cfg, seeds)
    traces = [_new_trace(cfg, net) for _ in seeds]

    def snapshot(step, network):
        for b, trace in enumerate(traces):
            trace.snapshots[step] = [layer.weights[b].copy() for layer in network.layers]

    if 0 in snap_steps:
        snapshot(0, net)
    for t, x, outputs, learn, net in iter_run(cfg, seeds, net):
        for b, trace in enumerate(traces):
            trace.record(t, x[b], [o[b] for o in outputs], learn)
        if t + 1 in snap_steps:
            snapshot(t + 1, net)
    return traces


def run_experiment(cfg: ExperimentConfig, seed: int | None = None) -> TraceStore:
    """Simulate ``cfg`` for one seed (``cfg.seed`` unless overridden)."""
    seed = cfg.seed if seed is None else seed
    snap_steps = set(cfg.output.snapshot_steps)
    net = build(cfg, seed)
    trace = _new_trace(cfg, net)
    if 0 in snap_steps:
        trace.snapshots[0] = [layer.weights.copy() for layer in net.layers]
    for t, x, outputs, learn, net in iter_run(cfg, seed, net):
        trace.record(t, x, outputs, learn)
        if t + 1 in snap_steps:
            trace.snapshots[t + 1] = [layer.weights.copy() for layer in net.layers]
    return trace
