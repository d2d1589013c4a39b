"""Experiment configuration: dataclasses, TOML loading and validation.

Defaults reproduce the reference parameter set (30 channels, 20 + 10 dense
neurons, retinal tau 100, dense tau 5-25, 2000 steps, learning rate 0.05
decayed by 0.99 every 10 steps).
"""

from __future__ import annotations

import dataclasses
import sys
from dataclasses import dataclass, field
from pathlib import Path
from typing import Any

if sys.version_info >= (3, 11):
    import tomllib
else:
    import tomli as tomllib

STIMULUS_KINDS = ("noise", "grating")


class ConfigError(ValueError):
    """Raised for invalid experiment configurations; ``problems`` lists every issue."""

    def __init__(self, problems):
        if isinstance(problems, str):
            problems = [problems]
        self.problems = list(problems)
        super().__init__("invalid config: " + "; ".join(self.problems))


@dataclass
class NetworkConfig:
    channels: int = 30
    layer_sizes: list[int] = field(default_factory=lambda: [20, 10])
    retina_tau: float = 100.0
    tau_range: list[float] = field(default_factory=lambda: [5.0, 25.0])
    theta_ratio: float = 0.1
    eta_ratio: float = 1.0
    gamma: float = 1.0
    s_max: float = 1.0
    leaky: bool = False


@dataclass
class LearningConfig:
    initial_rate: float = 0.05
    decay_factor: float = 0.99
    decay_interval: int = 10


@dataclass
class NoiseConfig:
    mean: float = 0.0
    sd: float = 1.0
    flash_magnitude: float = 3.0
    flash_interval: int = 10
    flash_range: list[float] | None = None


@dataclass
class GratingConfig:
    low: float = 0.0
    high: float = 1.0
    spatial_period: int = 1
    temporal_period: int = 2


@dataclass
class PhaseConfig:
    steps: int
    stimulus: str = "noise"
    learn: bool = False


@dataclass
class RenderRange:
    layer: int
    start: int
    stop: int


@dataclass
class OutputConfig:
    trace: str = "trace.csv"
    snapshot_steps: list[int] = field(default_factory=lambda: [1, 1000, 2000])
    renders: list[RenderRange] = field(default_factory=list)
    pixel_scale: int = 4


@dataclass
class ExperimentConfig:
    name: str = "experiment"
    seed: int = 0
    duration: int = 2000
    stimulus: str = "noise"
    learn: bool = False
    phases: list[PhaseConfig] = field(default_factory=list)
    network: NetworkConfig = field(default_factory=NetworkConfig)
    learning: LearningConfig = field(default_factory=LearningConfig)
    noise: NoiseConfig = field(default_factory=NoiseConfig)
    grating: GratingConfig = field(default_factory=GratingConfig)
    output: OutputConfig = field(default_factory=OutputConfig)

    def schedule(self) -> list[PhaseConfig]:
        """Phase list covering the whole run."""
        if self.phases:
            return list(self.phases)
        return [PhaseConfig(self.duration, self.stimulus, self.learn)]

    def validate(self) -> "ExperimentConfig":
        problems = []
        net, out = self.network, self.output
        if self.duration < 0:
            problems.append("duration must be >= 0")
        if net.channels < 1:
            problems.append("network.channels must be >= 1")
        if not net.layer_sizes or any(n < 1 for n in net.layer_sizes):
            problems.append("network.layer_sizes must list positive sizes")
        if not net.retina_tau > 1:
            problems.append("network.retina_tau must be > 1")
        if len(net.tau_range) != 2 or not 1 < net.tau_range[0] <= net.tau_range[1]:
            problems.append("network.tau_range must be [low, high] with 1 < low <= high")
        if not net.theta_ratio > 0 or not net.eta_ratio > 0:
            problems.append("network.theta_ratio and network.eta_ratio must be positive")
        if not 0 < net.gamma <= 1:
            problems.append("network.gamma must lie in (0, 1]")
        if not net.s_max > 0:
            problems.append("network.s_max must be positive")
        lr = self.learning
        if not lr.initial_rate > 0 or not 0 < lr.decay_factor < 1 or lr.decay_interval < 1:
            problems.append("learning needs initial_rate > 0, decay_factor in (0, 1), decay_interval >= 1")
        if not self.noise.sd > 0 or self.noise.flash_interval < 1:
            problems.append("noise needs sd > 0 and flash_interval >= 1")
        if self.noise.flash_range is not None and (
            len(self.noise.flash_range) != 2 or self.noise.flash_range[0] > self.noise.flash_range[1]
        ):
            problems.append("noise.flash_range must be [low, high]")
        g = self.grating
        if not g.high > g.low or g.spatial_period < 1 or g.temporal_period < 1:
            problems.append("grating needs high > low and periods >= 1")
        for i, ph in enumerate(self.schedule()):
            if ph.stimulus not in STIMULUS_KINDS:
                problems.append(f"phase {i}: unknown stimulus {ph.stimulus!r}")
            if ph.steps < 0:
                problems.append(f"phase {i}: steps must be >= 0")
        if self.phases and sum(p.steps for p in self.phases) != self.duration:
            problems.append(
                f"phases cover {sum(p.steps for p in self.phases)} steps but duration is {self.duration}"
            )
        for s in out.snapshot_steps:
            if not 0 <= s <= self.duration:
                problems.append(f"snapshot step {s} outside [0, {self.duration}]")
        n_layers = len(net.layer_sizes)
        for r in out.renders:
            if not 0 <= r.layer <= n_layers:
                problems.append(f"render layer {r.layer} outside [0, {n_layers}]")
            if not 0 <= r.start < r.stop <= self.duration:
                problems.append(f"render range [{r.start}, {r.stop}) outside [0, {self.duration}]")
        if out.pixel_scale < 1:
            problems.append("output.pixel_scale must be >= 1")
        if problems:
            raise ConfigError(problems)
        return self

    def to_dict(self) -> dict[str, Any]:
        return dataclasses.asdict(self)


def _build(cls, data: dict, where: str, problems: list):
    if not isinstance(data, dict):
        problems.append(f"{where} must be a table")
        return None
    names = {f.name for f in dataclasses.fields(cls)}
    unknown = sorted(set(data) - names)
    if unknown:
        problems.append(f"{where}: unknown keys {unknown}")
    try:
        return cls(**{k: v for k, v in data.items() if k in names})
    except TypeError as exc:
        problems.append(f"{where}: {exc}")
        return None


def from_dict(data: dict[str, Any]) -> ExperimentConfig:
    """Build and validate a config from a nested mapping (parsed TOML)."""
    problems: list[str] = []
    data = dict(data)
    sections = {
        "network": NetworkConfig,
        "learning": LearningConfig,
        "noise": NoiseConfig,
        "grating": GratingConfig,
    }
    kwargs = {}
    for key, cls in sections.items():
        kwargs[key] = _build(cls, data.pop(key, {}), key, problems) or cls()
    out = dict(data.pop("output", {}))
    renders = [
        _build(RenderRange, r, f"output.render[{i}]", problems)
        for i, r in enumerate(out.pop("render", []))
    ]
    kwargs["output"] = _build(OutputConfig, out, "output", problems) or OutputConfig()
    kwargs["output"].renders = [r for r in renders if r is not None]
    phases = [
        _build(PhaseConfig, p, f"phases[{i}]", problems)
        for i, p in enumerate(data.pop("phases", []))
    ]
    kwargs["phases"] = [p for p in phases if p is not None]
    cfg = _build(ExperimentConfig, data, "top level", problems)
    if problems or cfg is None:
        raise ConfigError(problems)
    cfg = dataclasses.replace(cfg, **kwargs)
    return cfg.validate()


def load_config(path) -> ExperimentConfig:
    path = Path(path)
    try:
        with path.open("rb") as fh:
            data = tomllib.load(fh)
    except OSError as exc:
        raise OSError(f"cannot read config {path}: {exc.strerror}") from exc
    except tomllib.TOMLDecodeError as exc:
        raise ConfigError(f"{path}: {exc}") from exc
    return from_dict(data)
