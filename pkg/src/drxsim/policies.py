from enum import Enum

from . import config
from .agent import NULL_ACTION, select_action

# Baselines send the legacy LongDrxCommand, index 1 of the 2-action space.
LEGACY_CE_ACTION = 1
LEGACY_ACTION_SPACE = 2


class PolicyKind(Enum):
    ALWAYS_ON = "always_on"
    TIMERS = "timers"
    NAIVE = "naive"
    RANDOM = "random"
    RL = "rl"

    @property
    def uses_drx(self):
        return self is not PolicyKind.ALWAYS_ON

    @property
    def stabilized(self):
        return self in STABILIZED_KINDS

    def action_space(self, configured):
        """Size of the action space the policy acts in."""
        if self is PolicyKind.RL:
            return configured
        return LEGACY_ACTION_SPACE


STABILIZED_KINDS = frozenset({PolicyKind.NAIVE, PolicyKind.RANDOM, PolicyKind.RL})


def decide(kind, queue_bits, rng, q_values=None, epsilon=config.EVAL_EPSILON):
    """
    One policy decision for an active UE.

    Args:
        kind (PolicyKind): Policy in charge.
        queue_bits (int): The UE's DL queue occupancy at decision time.
        rng (numpy.random.Generator): Policy random stream.
        q_values (numpy.ndarray | None): Q-values of the UE's state (RL only).
        epsilon (float): Exploration rate (RL only).

    Returns:
        int: Action index.
    """
    if kind in (PolicyKind.ALWAYS_ON, PolicyKind.TIMERS):
        return NULL_ACTION
    if kind is PolicyKind.NAIVE:
        return LEGACY_CE_ACTION if queue_bits == 0 else NULL_ACTION
    if kind is PolicyKind.RANDOM:
        return LEGACY_CE_ACTION if rng.random() < 0.5 else NULL_ACTION
    if q_values is None:
        raise ValueError("The RL policy needs Q-values to decide.")
    return select_action(q_values, epsilon, rng, ue_active=True)


def stabilize(action, queue_bits, q_sat=config.Q_SAT_BITS):
    """Suppresses any CE while the queue is saturated."""
    if queue_bits >= q_sat:
        return NULL_ACTION
    return action
