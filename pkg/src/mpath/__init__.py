"""Membrane potential and activation threshold homeostasis (MPATH) neurons."""

from mpath.network import Network, build_network, network_step
from mpath.neuron import DenseLayer, NeuronState, threshold
from mpath.plasticity import LearningSchedule, ghl_delta, learn_step, scale_rows
from mpath.retina import RetinaLayer
from mpath.stats import RunningStats
from mpath.stimuli import Grating, NoiseFlash, Phase, Phased, sample

__version__ = "0.1.0"
