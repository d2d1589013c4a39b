import numpy as np


def below(cap):
    """Largest float strictly below ``cap``."""
    return np.nextafter(cap, -np.inf)


def open_tanh(x):
    """tanh clipped into the open interval (-1, 1).

    Float tanh rounds to exactly +/-1 for |x| > ~19; the model relies on the
    response staying strictly inside its saturation level.
    """
    one = below(1.0)
    return np.clip(np.tanh(x), -one, one)


def safe_exp(x):
    with np.errstate(over="ignore"):
        return np.exp(x)
