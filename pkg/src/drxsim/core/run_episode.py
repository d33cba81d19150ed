import numpy as np

from .. import metrics
from ..mac import process_feedback
from ..replay_memory import Transition
from .run_tti import run_tti


def run_episode(world):
    """
    Runs a world from TTI 0 to the end of the episode.

    The TB sent in the last TTI still gets its feedback, so its SDUs count
    towards the delays. When the world is learning, every open decision is
    closed with a terminal transition whose next state is all zeros.

    Returns:
        EpisodeMetrics: KPIs of the episode.
    """
    n_ttis = world.cfg.episode_ttis
    for t in range(n_ttis):
        run_tti(world, t)

    # HARQ feedback of the last TTI; DRX state and rewards are left as they are.
    for ue in world.ues:
        if ue.in_flight is None:
            continue
        tb, delivered = ue.in_flight
        ue.in_flight = None
        ue.queue, completed, _ = process_feedback(ue.queue, tb, delivered, n_ttis)
        for _, delay in completed:
            ue.delays.append(delay)
            ue.satisfaction.push(delay)

    if world.training:
        for ue in world.ues:
            if ue.open_decision is not None:
                s = ue.open_decision.s
                world.agent.remember(
                    Transition(s, ue.open_decision.a, ue.open_decision.reward, np.zeros_like(s), True)
                )
                ue.open_decision = None

    return metrics.finalize(
        active_ttis=[ue.active_ttis for ue in world.ues],
        episode_ttis=n_ttis,
        delays=[ue.delays for ue in world.ues],
        satisfaction_final=[ue.satisfaction.value() for ue in world.ues],
        cum_rewards=[ue.cum_reward for ue in world.ues],
        action_histogram=world.action_histogram,
        max_queue_bits=world.max_queue_bits,
    )
