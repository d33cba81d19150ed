import logging
import os
import shutil
import sys

from .. import config, core, experiment_config, results_writer, utils
from ..errors import DrxSimError


def _merge_runs(results, out_dir):
    """Merges the per-run learning curves and promotes the best checkpoint of all runs."""
    curve_path = os.path.join(out_dir, config.LEARNING_CURVE_FILENAME)
    results_writer.merge_csv_files(
        [r.learning_curve for r in results], curve_path, results_writer.LEARNING_CURVE_FIELDS
    )
    best = max(results, key=lambda r: r.best_reward)
    best_path = os.path.join(out_dir, config.BEST_CHECKPOINT_FILENAME)
    shutil.copyfile(best.best_checkpoint, best_path)
    logging.info(
        f"Best checkpoint: run {best.run}, episode {best.best_episode} "
        f"(reward/UE {best.best_reward:.2f}) copied to '{best_path}'"
    )
    return curve_path, best_path, best


def run_train(args):
    """Handles the logic for training the DQN agent over one or more runs."""
    out_dir = os.path.abspath(args.out)

    try:
        cfg = experiment_config.config_from_args(args)
    except DrxSimError as e:
        logging.error(f"Error: {e}")
        sys.exit(1)

    utils.display_settings(
        cfg, "Train DQN Agent", out_dir, extra={"Runs": cfg.runs, "Max workers": args.workers}
    )

    try:
        os.makedirs(out_dir, exist_ok=True)
        jobs = [
            (cfg, os.path.join(out_dir, config.RUN_DIR_TEMPLATE.format(run)), run, cfg.seed + run)
            for run in range(cfg.runs)
        ]
        results = core.train_many(jobs, max_workers=args.workers)
        curve_path, best_path, best = _merge_runs(results, out_dir)

        print("-" * 30)
        for r in results:
            print(
                f"Run {r.run:>2} (seed {r.seed}): mean reward/UE {r.mean_reward:9.2f}, "
                f"best {r.best_reward:9.2f} at episode {r.best_episode}"
            )
        print(f"Learning curve: {curve_path}")
        print(f"Best checkpoint (run {best.run}): {best_path}")
        print("-" * 30)
        print("Training complete.")

    except DrxSimError as e:
        logging.error(f"Training aborted: {e}")
        sys.exit(1)
    except Exception as e:
        logging.exception(f"An unexpected error occurred during training: {e}")
        print("\nAn error occurred. Please check the logs or run with -v for more details.")
        sys.exit(1)
