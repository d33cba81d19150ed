import math
from dataclasses import dataclass, field

import numpy as np


@dataclass(frozen=True)
class UeMetrics:
    ue_id: int
    activity: float
    delays: tuple
    mean_delay_ttis: float | None
    delay_p5: float | None
    delay_p50: float | None
    delay_p95: float | None
    satisfaction_final: float
    cum_reward: float

    @property
    def num_delivered(self):
        return len(self.delays)


@dataclass(frozen=True)
class EpisodeMetrics:
    num_ues: int
    ues: tuple
    cum_reward_per_ue: float
    action_histogram: tuple
    max_queue_bits: int
    extra: dict = field(default_factory=dict)

    @property
    def mean_activity(self):
        return float(np.mean([ue.activity for ue in self.ues]))

    @property
    def mean_satisfaction(self):
        return float(np.mean([ue.satisfaction_final for ue in self.ues]))


def nearest_rank_percentile(sorted_values, q):
    """Nearest-rank percentile: the ceil(q/100 * n)-th smallest value."""
    n = len(sorted_values)
    if n == 0:
        return None
    rank = max(1, math.ceil(q / 100.0 * n))
    return sorted_values[min(rank, n) - 1]


def delay_statistics(delays):
    """
    Returns:
        tuple: (mean, p5, p50, p95), all None when no SDU was delivered.
    """
    if not delays:
        return None, None, None, None
    ordered = sorted(delays)
    return (
        float(np.mean(ordered)),
        nearest_rank_percentile(ordered, 5),
        nearest_rank_percentile(ordered, 50),
        nearest_rank_percentile(ordered, 95),
    )


def activity_from_trace(w_trace):
    return float(np.mean(w_trace))


def finalize(active_ttis, episode_ttis, delays, satisfaction_final, cum_rewards, action_histogram, max_queue_bits):
    """
    Aggregates one finished episode.

    Args:
        active_ttis (list[int]): Per UE, the number of TTIs with W = 1.
        episode_ttis (int): Episode length N_t.
        delays (list[list[int]]): Per UE, delays of the SDUs delivered in the episode.
        satisfaction_final (list[float]): Per UE, the sliding-window satisfaction at the end.
        cum_rewards (list[float]): Per UE, the cumulative reward.
        action_histogram (list[int]): Decision counts per action index.
        max_queue_bits (int): Largest queue occupancy seen.

    Returns:
        EpisodeMetrics: The aggregated KPIs.
    """
    ues = []
    for ue_id, (active, ue_delays) in enumerate(zip(active_ttis, delays)):
        mean, p5, p50, p95 = delay_statistics(ue_delays)
        ues.append(
            UeMetrics(
                ue_id=ue_id,
                activity=active / episode_ttis,
                delays=tuple(ue_delays),
                mean_delay_ttis=mean,
                delay_p5=p5,
                delay_p50=p50,
                delay_p95=p95,
                satisfaction_final=satisfaction_final[ue_id],
                cum_reward=cum_rewards[ue_id],
            )
        )
    num_ues = len(ues)
    return EpisodeMetrics(
        num_ues=num_ues,
        ues=tuple(ues),
        cum_reward_per_ue=sum(cum_rewards) / num_ues,
        action_histogram=tuple(action_histogram),
        max_queue_bits=max_queue_bits,
    )
