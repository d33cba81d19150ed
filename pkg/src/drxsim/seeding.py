import numpy as np

# Stream identifiers; every random consumer draws from its own stream so that
# changing one policy never shifts the traffic or fading seen by another.
TRAFFIC = 1
CHANNEL = 2
POLICY = 3
UE_COUNT = 4
AGENT = 5

PHASE_TRAIN = 0
PHASE_EVAL = 1


def make_rng(seed, *keys):
    """Independent generator for (seed, keys...), e.g. make_rng(seed, TRAFFIC, phase, episode, ue_id)."""
    return np.random.default_rng([int(seed), *(int(k) for k in keys)])
