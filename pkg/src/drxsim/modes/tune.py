import logging
import os
import sys

from .. import config, core, experiment_config, results_writer, utils
from ..errors import DrxSimError


def run_tune(args):
    """Handles the logic for comparing (learning rate, discount factor) pairs over short independent training runs."""
    out_dir = os.path.abspath(args.out)

    try:
        cfg = experiment_config.config_from_args(args)
    except DrxSimError as e:
        logging.error(f"Error: {e}")
        sys.exit(1)

    grid = [(lr, gamma) for lr in cfg.tune_learning_rates for gamma in cfg.tune_discount_factors]
    utils.display_settings(
        cfg,
        "Tune Learning Rate and Discount Factor",
        out_dir,
        extra={
            "Learning rates": ", ".join(f"{lr:g}" for lr in cfg.tune_learning_rates),
            "Discount factors": ", ".join(f"{g:g}" for g in cfg.tune_discount_factors),
            "Runs per pair": cfg.tune_runs,
        },
    )

    try:
        jobs = []
        for lr, gamma in grid:
            pair_cfg = cfg.replace(learning_rate=lr, gamma=gamma)
            pair_dir = os.path.join(out_dir, f"lr_{lr:g}_gamma_{gamma:g}")
            for run in range(cfg.tune_runs):
                run_dir = os.path.join(pair_dir, config.RUN_DIR_TEMPLATE.format(run))
                jobs.append((pair_cfg, run_dir, run, cfg.seed + run))
        results = core.train_many(jobs, max_workers=args.workers)

        rows = [
            {
                "learning_rate": job[0].learning_rate,
                "discount_factor": job[0].gamma,
                "run": result.run,
                "mean_cum_reward_per_ue": result.mean_reward,
                "best_cum_reward_per_ue": result.best_reward,
            }
            for job, result in zip(jobs, results)
        ]
        tuning_path = os.path.join(out_dir, config.TUNING_FILENAME)
        if os.path.exists(tuning_path):
            os.remove(tuning_path)
        results_writer.write_tuning_rows(tuning_path, rows)

        averages = {}
        for lr, gamma in grid:
            means = [
                row["mean_cum_reward_per_ue"]
                for row in rows
                if row["learning_rate"] == lr and row["discount_factor"] == gamma
            ]
            averages[(lr, gamma)] = sum(means) / len(means)
        best = max(averages, key=averages.get)

        print("-" * 30)
        for (lr, gamma), avg in averages.items():
            marker = "  <- best" if (lr, gamma) == best else ""
            print(f"Learning rate {lr:<8g} gamma {gamma:<6g}: mean reward/UE {avg:9.2f}{marker}")
        print(f"Tuning results: {tuning_path}")
        print("-" * 30)
        logging.info(
            f"Best learning rate {best[0]:g} with discount factor {best[1]:g} "
            f"(mean reward/UE {averages[best]:.2f})"
        )
        print("Tuning complete.")

    except DrxSimError as e:
        logging.error(f"Tuning aborted: {e}")
        sys.exit(1)
    except Exception as e:
        logging.exception(f"An unexpected error occurred during tuning: {e}")
        print("\nAn error occurred. Please check the logs or run with -v for more details.")
        sys.exit(1)
