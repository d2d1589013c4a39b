"""Behavioral checks on the reference experiments beyond the acceptance gate."""

import numpy as np

from mpath.harness.experiments import preset
from mpath.harness.metrics import flash_locking_index
from mpath.harness.runner import run_batch

SEEDS = list(range(10))


def test_learning_sharpens_flash_response():
    on = run_batch(preset("fig2"), SEEDS)
    off = run_batch(preset("fig1"), SEEDS)
    for layer in (1, 2):
        a = [flash_locking_index(t, layer, (1800, 2000)) for t in on]
        b = [flash_locking_index(t, layer, (1800, 2000)) for t in off]
        assert sum(x > y for x, y in zip(a, b)) >= 8


def test_learned_locking_emerges_within_first_200_steps():
    on = run_batch(preset("fig2"), SEEDS)
    off = run_batch(preset("fig1"), SEEDS)
    a = np.mean([flash_locking_index(t, 2, (100, 200)) for t in on])
    b = np.mean([flash_locking_index(t, 2, (100, 200)) for t in off])
    assert a > b + 0.1
