import logging
import math
import os
from dataclasses import dataclass, field

from .. import checkpoint_manager, config, results_writer, seeding
from ..agent import DqnAgent, epsilon_schedule
from ..errors import TrainingDivergedError
from ..policies import PolicyKind
from .build_world import build_world
from .run_episode import run_episode
from .sample_num_ues import sample_num_ues


@dataclass
class TrainResult:
    run: int
    seed: int
    out_dir: str
    best_reward: float = -math.inf
    best_episode: int = -1
    rewards: list = field(default_factory=list)

    @property
    def best_checkpoint(self):
        return os.path.join(self.out_dir, config.BEST_CHECKPOINT_FILENAME)

    @property
    def final_checkpoint(self):
        return os.path.join(self.out_dir, config.FINAL_CHECKPOINT_FILENAME)

    @property
    def learning_curve(self):
        return os.path.join(self.out_dir, config.LEARNING_CURVE_FILENAME)

    @property
    def mean_reward(self):
        return sum(self.rewards) / len(self.rewards) if self.rewards else math.nan


def train(cfg, out_dir, run=0, seed=None):
    """
    One training run of the shared DQN agent.

    Each episode draws a cell size (unless cfg.num_ues fixes it), follows the
    epsilon schedule and appends one learning-curve row. The weights with the
    highest episode cumulative reward per UE are kept as the best checkpoint;
    the last weights are stored as the final checkpoint.

    Args:
        cfg (ExperimentConfig): Experiment settings.
        out_dir (str): Directory receiving the learning curve and checkpoints.
        run (int): Run index, written to the learning curve.
        seed (int | None): Seed of the run; cfg.seed + run when None.

    Returns:
        TrainResult: Per-episode rewards and the checkpoint locations.
    """
    seed = cfg.seed + run if seed is None else seed
    os.makedirs(out_dir, exist_ok=True)
    result = TrainResult(run=run, seed=seed, out_dir=out_dir)
    if os.path.exists(result.learning_curve):
        os.remove(result.learning_curve)

    agent = DqnAgent.from_config(cfg, seeding.make_rng(seed, seeding.AGENT))
    ue_count_rng = seeding.make_rng(seed, seeding.UE_COUNT)
    logging.info(
        f"Run {run}: training {cfg.episodes} episodes of {cfg.episode_ttis} TTIs "
        f"(seed {seed}, action space {cfg.action_space})"
    )

    for episode in range(cfg.episodes):
        num_ues = cfg.num_ues or sample_num_ues(ue_count_rng, cfg.ue_count_weights)
        epsilon = epsilon_schedule(
            episode,
            start=cfg.epsilon_start,
            end=cfg.epsilon_end,
            step_episodes=cfg.epsilon_step_episodes,
            decay_episodes=cfg.epsilon_decay_episodes,
        )
        world = build_world(
            cfg,
            PolicyKind.RL,
            num_ues,
            episode,
            seed,
            phase=seeding.PHASE_TRAIN,
            agent=agent,
            epsilon=epsilon,
        )
        try:
            episode_metrics = run_episode(world)
        except TrainingDivergedError as e:
            raise TrainingDivergedError(f"Run {run}, episode {episode}: {e}") from e

        reward = episode_metrics.cum_reward_per_ue
        result.rewards.append(reward)
        results_writer.write_learning_curve_row(
            result.learning_curve,
            {
                "run": run,
                "episode": episode,
                "num_ues": num_ues,
                "epsilon": epsilon,
                "cum_reward_per_ue": reward,
                "mean_satisfaction": episode_metrics.mean_satisfaction,
            },
        )

        metadata = {"run": run, "seed": seed, "episode": episode, "cum_reward_per_ue": reward}
        if reward > result.best_reward:
            result.best_reward = reward
            result.best_episode = episode
            checkpoint_manager.save_checkpoint(result.best_checkpoint, agent.net, agent.normalization, metadata)

        logging.debug(
            f"Run {run} episode {episode}: U={num_ues}, eps={epsilon:.3g}, reward/UE={reward:.2f}, "
            f"ERM={len(agent.memory)}, train steps={agent.train_steps}, loss={agent.last_loss:.4g}"
        )
        if (episode + 1) % cfg.log_every_episodes == 0 or episode == cfg.episodes - 1:
            logging.info(
                f"Run {run}: episode {episode + 1}/{cfg.episodes}, reward/UE {reward:.2f} "
                f"(best {result.best_reward:.2f} at episode {result.best_episode})"
            )

    checkpoint_manager.save_checkpoint(
        result.final_checkpoint,
        agent.net,
        agent.normalization,
        {"run": run, "seed": seed, "episode": cfg.episodes - 1, "episodes": cfg.episodes},
    )
    logging.info(
        f"Run {run} finished: best reward/UE {result.best_reward:.2f} at episode {result.best_episode}"
    )
    return result
