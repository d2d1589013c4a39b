"""Seeded, random-access input programs.

Every program is a pure function of its parameters and the step index, so any
step can be sampled without replaying earlier ones. Noise is counter-based:
the Philox generator is keyed by the seed and positioned by the step.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Union

import numpy as np

_NOISE_LANE = 0
_FLASH_LANE = 1


def _stream(seed: int, t: int, lane: int) -> np.random.Generator:
    return np.random.Generator(np.random.Philox(key=seed, counter=[lane, t, 0, 0]))


def _check_step(t):
    if t < 0:
        raise IndexError(f"step must be non-negative, got {t}")


@dataclass(frozen=True)
class NoiseFlash:
    """Gaussian noise with a whole-field flash every ``flash_interval`` steps.

    Flashes add ``flash_magnitude`` to every channel at steps ``t > 0`` with
    ``t % flash_interval == 0``. When ``flash_range`` is given, each flash
    instead has a magnitude drawn uniformly from that range.
    """

    channels: int
    seed: int = 0
    noise_mean: float = 0.0
    noise_sd: float = 1.0
    flash_magnitude: float = 3.0
    flash_interval: int = 10
    flash_range: tuple[float, float] | None = None

    def __post_init__(self):
        if self.channels < 1:
            raise ValueError("channels must be >= 1")
        if self.flash_interval < 1:
            raise ValueError("flash_interval must be >= 1")
        if not self.noise_sd > 0:
            raise ValueError("noise_sd must be positive")
        if self.flash_range is not None and not self.flash_range[0] <= self.flash_range[1]:
            raise ValueError("flash_range must be (low, high) with low <= high")

    def is_flash(self, t: int) -> bool:
        return t > 0 and t % self.flash_interval == 0

    def flash(self, t: int) -> float:
        if not self.is_flash(t):
            return 0.0
        if self.flash_range is None:
            return self.flash_magnitude
        return float(_stream(self.seed, t, _FLASH_LANE).uniform(*self.flash_range))

    def sample(self, t: int) -> np.ndarray:
        _check_step(t)
        noise = _stream(self.seed, t, _NOISE_LANE).normal(
            self.noise_mean, self.noise_sd, size=self.channels
        )
        return noise + self.flash(t)


@dataclass(frozen=True)
class Grating:
    """Two-level square grating drifting one spatial period per ``temporal_period``.

    Channel ``i`` at step ``t`` is ``high`` when
    ``i // spatial_period + t // temporal_period`` is even and ``low`` otherwise;
    the pattern wraps around the channel array.
    """

    channels: int
    low: float = 0.0
    high: float = 1.0
    spatial_period: int = 1
    temporal_period: int = 2

    def __post_init__(self):
        if self.channels < 1:
            raise ValueError("channels must be >= 1")
        if self.spatial_period < 1 or self.temporal_period < 1:
            raise ValueError("grating periods must be >= 1")
        if not self.high > self.low:
            raise ValueError("grating high level must exceed low level")

    def sample(self, t: int) -> np.ndarray:
        _check_step(t)
        phase = np.arange(self.channels) // self.spatial_period + t // self.temporal_period
        return np.where(phase % 2 == 0, self.high, self.low).astype(float)


@dataclass(frozen=True)
class Phase:
    duration: int
    program: "Program"


@dataclass(frozen=True)
class Phased:
    """Consecutive sub-programs; each is sampled at the global step index."""

    phases: tuple[Phase, ...]
    starts: tuple[int, ...] = field(init=False, repr=False)

    def __post_init__(self):
        if not self.phases:
            raise ValueError("a phased program needs at least one phase")
        widths = {p.program.channels for p in self.phases}
        if len(widths) != 1:
            raise ValueError(f"phases disagree on channel count: {sorted(widths)}")
        starts, t = [], 0
        for p in self.phases:
            if p.duration < 0:
                raise ValueError("phase duration must be non-negative")
            starts.append(t)
            t += p.duration
        object.__setattr__(self, "phases", tuple(self.phases))
        object.__setattr__(self, "starts", tuple(starts))

    @property
    def channels(self) -> int:
        return self.phases[0].program.channels

    @property
    def duration(self) -> int:
        return self.starts[-1] + self.phases[-1].duration

    def phase_index(self, t: int) -> int:
        _check_step(t)
        if t >= self.duration:
            raise IndexError(f"step {t} beyond phased program of {self.duration} steps")
        return int(np.searchsorted(self.starts, t, side="right")) - 1

    def sample(self, t: int) -> np.ndarray:
        return self.phases[self.phase_index(t)].program.sample(t)


Program = Union[NoiseFlash, Grating, Phased]


def sample(program: Program, t: int) -> np.ndarray:
    return program.sample(t)
