"""Flash locking of each dense layer in 100-step windows, learning on vs off.

    python scripts/locking_timecourse.py [--seeds 10]
"""

import argparse

import numpy as np

from mpath.harness.experiments import preset
from mpath.harness.metrics import flash_locking_index
from mpath.harness.runner import run_batch

parser = argparse.ArgumentParser()
parser.add_argument("--seeds", type=int, default=10)
args = parser.parse_args()
seeds = list(range(args.seeds))

windows = [(a, a + 100) for a in range(0, 2000, 100)]
print("window      " + " ".join(f"{a:>5d}" for a, _ in windows))
for label, name in (("off", "fig1"), ("on", "fig2")):
    traces = run_batch(preset(name), seeds)
    for layer in (1, 2):
        row = [np.mean([flash_locking_index(t, layer, w) for t in traces]) for w in windows]
        print(f"{label:3s} layer {layer} " + " ".join(f"{v:5.2f}" for v in row))
