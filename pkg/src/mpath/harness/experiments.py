"""The three reference experiments as ready-made configs."""

from __future__ import annotations

from mpath.harness.config import ExperimentConfig, OutputConfig, PhaseConfig, RenderRange


def _renders(windows, layers=(0, 1, 2)):
    return [RenderRange(layer, a, b) for a, b in windows for layer in layers]


def noise_flash(learn: bool, seed: int = 0) -> ExperimentConfig:
    """Gaussian noise with flashes every 10 steps, learning on or off."""
    return ExperimentConfig(
        name="noise_flash_learning" if learn else "noise_flash",
        seed=seed,
        stimulus="noise",
        learn=learn,
        output=OutputConfig(renders=_renders([(0, 100), (1900, 2000)])),
    )


def grating_recall(seed: int = 0) -> ExperimentConfig:
    """Noise, trained grating, untrained noise, then the grating again without training."""
    return ExperimentConfig(
        name="grating_recall",
        seed=seed,
        phases=[
            PhaseConfig(50, "noise", learn=True),
            PhaseConfig(950, "grating", learn=True),
            PhaseConfig(500, "noise", learn=False),
            PhaseConfig(500, "grating", learn=False),
        ],
        output=OutputConfig(
            renders=_renders([(0, 100), (950, 1050), (1450, 1550), (1900, 2000)])
        ),
    )


PRESETS = {
    "fig1": lambda seed=0: noise_flash(False, seed),
    "fig2": lambda seed=0: noise_flash(True, seed),
    "fig3": grating_recall,
}


def preset(name: str, seed: int = 0) -> ExperimentConfig:
    try:
        return PRESETS[name](seed)
    except KeyError:
        raise KeyError(f"unknown preset {name!r}; choose from {sorted(PRESETS)}") from None
