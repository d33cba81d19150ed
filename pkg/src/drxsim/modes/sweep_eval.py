import logging
import os
import sys

from .. import checkpoint_manager, config, core, experiment_config, utils
from ..errors import DrxSimError, QueueInstabilityError
from ..policies import PolicyKind

BASELINES = (PolicyKind.ALWAYS_ON, PolicyKind.TIMERS, PolicyKind.NAIVE, PolicyKind.RANDOM)


def _load_checkpoints(cfg, ckpt_paths):
    """Loads every --ckpt; each checkpoint is evaluated in its own action space."""
    loaded = []
    for path in ckpt_paths or []:
        net, normalization, _ = checkpoint_manager.load_checkpoint(
            path, expected_input_size=config.FEATURES_PER_FRAME * cfg.history_size
        )
        loaded.append((path, net, normalization))
    return loaded


def run_sweep_eval(args):
    """Handles the logic for evaluating all policies for every cell size into one eval.csv."""
    out_dir = os.path.abspath(args.out)

    try:
        cfg = experiment_config.config_from_args(args)
        checkpoints = _load_checkpoints(cfg, args.ckpt)
    except DrxSimError as e:
        logging.error(f"Error: {e}")
        sys.exit(1)

    if not checkpoints:
        logging.warning("No checkpoint given: the 'rl' policy is left out of the sweep.")
    ue_counts = range(1, args.max_ues + 1)
    utils.display_settings(
        cfg,
        "Sweep Evaluation",
        out_dir,
        extra={"Cell sizes": f"1..{args.max_ues}", "RL checkpoints": len(checkpoints)},
    )

    try:
        for name in (config.EVAL_FILENAME, config.ACTIONS_FILENAME):
            path = os.path.join(out_dir, name)
            if os.path.exists(path):
                os.remove(path)

        results = []
        unstable = []
        for num_ues in ue_counts:
            points = [(cfg, policy, None, None) for policy in BASELINES]
            points += [
                (cfg.replace(action_space=net.num_actions), PolicyKind.RL, net, normalization)
                for _, net, normalization in checkpoints
            ]
            for point_cfg, policy, net, normalization in points:
                try:
                    results.append(
                        core.evaluate(
                            point_cfg,
                            policy,
                            num_ues,
                            out_dir=out_dir,
                            net=net,
                            normalization=normalization,
                        )
                    )
                except QueueInstabilityError as e:
                    # An unstable point is reported and left out of eval.csv.
                    logging.error(f"'{policy.value}' with {num_ues} UE(s) skipped: {e}")
                    unstable.append((policy.value, num_ues))

        utils.print_eval_summary(results)
        if unstable:
            print(f"Unstable (skipped): {', '.join(f'{p} U={u}' for p, u in unstable)}")
        print(f"Results written to '{out_dir}'.")
        print("Sweep complete.")

    except DrxSimError as e:
        logging.error(f"Sweep aborted: {e}")
        sys.exit(1)
    except Exception as e:
        logging.exception(f"An unexpected error occurred during the sweep: {e}")
        print("\nAn error occurred. Please check the logs or run with -v for more details.")
        sys.exit(1)
