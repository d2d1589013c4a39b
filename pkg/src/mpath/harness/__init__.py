from mpath.harness.config import ConfigError, ExperimentConfig, from_dict, load_config
from mpath.harness.experiments import preset
from mpath.harness.metrics import flash_locking_index, pattern_similarity, weight_drift
from mpath.harness.render import render_raster
from mpath.harness.runner import iter_run, run_batch, run_experiment
from mpath.harness.trace import TraceStore, export_csv, read_csv

__all__ = [
    "ConfigError", "ExperimentConfig", "TraceStore", "export_csv", "flash_locking_index",
    "from_dict", "iter_run", "load_config", "pattern_similarity", "preset", "read_csv",
    "render_raster", "run_batch", "run_experiment", "weight_drift",
]
