"""Per-seed behavioral metrics for the three reference experiments.

    python scripts/seed_sweep.py [--seeds 10]
"""

import argparse


from mpath.harness.experiments import preset
from mpath.harness.metrics import flash_locking_index, pattern_similarity, weight_drift
from mpath.harness.runner import run_batch

parser = argparse.ArgumentParser()
parser.add_argument("--seeds", type=int, default=10)
args = parser.parse_args()
seeds = list(range(args.seeds))

off = run_batch(preset("fig1"), seeds)
on = run_batch(preset("fig2"), seeds)
grating = run_batch(preset("fig3"), seeds)

print("seed  lock_off_late  lock_on_early  lock_on_late  drift_1_1000  drift_1000_2000  sim_recall  sim_noise")
for s, a, b, g in zip(seeds, off, on, grating):
    print(
        f"{s:4d}  {flash_locking_index(a, 2, (1800, 2000)):13.3f}"
        f"  {flash_locking_index(b, 2, (0, 200)):13.3f}"
        f"  {flash_locking_index(b, 2, (1800, 2000)):12.3f}"
        f"  {weight_drift(b.snapshots, 1, 1000):12.3f}"
        f"  {weight_drift(b.snapshots, 1000, 2000):15.3f}"
        f"  {pattern_similarity(g, 2, (900, 1000), (1900, 2000)):10.3f}"
        f"  {pattern_similarity(g, 2, (900, 1000), (1100, 1200)):9.3f}"
    )
