import logging
import os
from dataclasses import dataclass, field

from .. import config, results_writer, seeding
from ..agent import action_label
from ..metrics import delay_statistics
from ..policies import PolicyKind
from .build_world import build_world
from .run_episode import run_episode


@dataclass
class EvalResult:
    policy: PolicyKind
    action_space: int
    num_ues: int
    rows: list
    action_histogram: list
    traces: list = field(default_factory=list)

    @property
    def mean_activity(self):
        return sum(row["activity"] for row in self.rows) / len(self.rows)

    @property
    def mean_satisfaction(self):
        return sum(row["satisfaction"] for row in self.rows) / len(self.rows)

    def _mean_of(self, key):
        values = [row[key] for row in self.rows if row[key] is not None]
        return sum(values) / len(values) if values else None

    @property
    def mean_delay_ms(self):
        return self._mean_of("mean_delay_ms")

    @property
    def mean_p95_delay_ms(self):
        return self._mean_of("delay_p95_ms")


def evaluate(
    cfg,
    policy,
    num_ues,
    out_dir=None,
    net=None,
    normalization=None,
    episodes=None,
    seed=None,
    record_trace=False,
):
    """
    Evaluates a policy for a fixed number of UEs, without learning.

    Per-UE activity and delays are pooled over all evaluation episodes;
    satisfaction is the share of delivered SDUs within the delay budget, and
    satisfaction_final the sliding-window value at episode end, averaged over
    episodes.

    Args:
        cfg (ExperimentConfig): Experiment settings.
        policy (PolicyKind): Policy to evaluate.
        num_ues (int): Fixed cell size.
        out_dir (str | None): Directory receiving eval.csv and actions.csv; nothing is written when None.
        net (QNetwork | None): Trained network (RL only).
        normalization (FeatureNormalization | None): Feature scaling stored with the network.
        episodes (int | None): Number of episodes, cfg.eval_episodes when None.
        seed (int | None): Base seed, cfg.seed when None.
        record_trace (bool): Keep each episode's W traces and emitted-CE log in the result.

    Returns:
        EvalResult: Per-UE rows and the action histogram.
    """
    episodes = cfg.eval_episodes if episodes is None else episodes
    seed = cfg.seed if seed is None else seed
    action_space = policy.action_space(cfg.action_space)
    active_ttis = [0] * num_ues
    delays = [[] for _ in range(num_ues)]
    satisfaction_final = [0.0] * num_ues
    histogram = [0] * action_space
    traces = []

    logging.info(f"Evaluating '{policy.value}' with {num_ues} UE(s) over {episodes} episode(s)")
    for episode in range(episodes):
        world = build_world(
            cfg,
            policy,
            num_ues,
            episode,
            seed,
            phase=seeding.PHASE_EVAL,
            net=net,
            normalization=normalization,
            epsilon=cfg.eval_epsilon,
            record_trace=record_trace,
        )
        episode_metrics = run_episode(world)
        for ue in episode_metrics.ues:
            active_ttis[ue.ue_id] += round(ue.activity * cfg.episode_ttis)
            delays[ue.ue_id].extend(ue.delays)
            satisfaction_final[ue.ue_id] += ue.satisfaction_final / episodes
        histogram = [a + b for a, b in zip(histogram, episode_metrics.action_histogram)]
        if record_trace:
            traces.append({"w": [ue.w_trace for ue in world.ues], "ce_log": world.ce_log})
        logging.debug(
            f"Episode {episode}: activity {episode_metrics.mean_activity:.3f}, "
            f"max queue {episode_metrics.max_queue_bits} bits"
        )

    rows = []
    for ue_id in range(num_ues):
        mean, p5, p50, p95 = delay_statistics(delays[ue_id])
        delivered = len(delays[ue_id])
        on_time = sum(1 for d in delays[ue_id] if d <= cfg.delta_ms)
        rows.append(
            {
                "policy": policy.value,
                "action_space": action_space,
                "num_ues": num_ues,
                "ue_id": ue_id,
                "activity": active_ttis[ue_id] / (episodes * cfg.episode_ttis),
                "mean_delay_ms": mean,
                "delay_p5_ms": p5,
                "delay_p50_ms": p50,
                "delay_p95_ms": p95,
                "satisfaction": on_time / delivered if delivered else 1.0,
                "satisfaction_final": satisfaction_final[ue_id],
            }
        )

    result = EvalResult(policy, action_space, num_ues, rows, histogram, traces)
    if out_dir is not None:
        write_eval_results(result, out_dir)
    return result


def action_rows(result):
    total = sum(result.action_histogram)
    return [
        {
            "policy": result.policy.value,
            "action_space": result.action_space,
            "action_index": index,
            "skip_ms": action_label(index, result.action_space),
            "count": count,
            "frequency": count / total if total else 0.0,
        }
        for index, count in enumerate(result.action_histogram)
    ]


def write_eval_results(result, out_dir):
    os.makedirs(out_dir, exist_ok=True)
    eval_path = os.path.join(out_dir, config.EVAL_FILENAME)
    actions_path = os.path.join(out_dir, config.ACTIONS_FILENAME)
    results_writer.append_rows(eval_path, results_writer.EVAL_FIELDS, result.rows)
    results_writer.write_action_rows(actions_path, action_rows(result))
    logging.info(f"Results for '{result.policy.value}' (U={result.num_ues}) appended to '{eval_path}' and '{actions_path}'")
