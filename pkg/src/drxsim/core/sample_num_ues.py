import numpy as np

from .. import config


def sample_num_ues(rng, weights=config.UE_COUNT_WEIGHTS):
    """Draws a cell size in 1..len(weights) with the given (unnormalised) weights."""
    p = np.asarray(weights, dtype=float)
    p = p / p.sum()
    return int(rng.choice(len(p), p=p)) + 1
