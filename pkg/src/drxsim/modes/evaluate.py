import logging
import os
import sys

from .. import checkpoint_manager, config, core, experiment_config, utils
from ..errors import DrxSimError
from ..policies import PolicyKind


def load_policy_network(cfg, policy, ckpt_path):
    """Loads the network of the RL policy; baselines need none."""
    if policy is not PolicyKind.RL:
        return None, None
    if not ckpt_path:
        raise DrxSimError("The 'rl' policy needs a checkpoint (--ckpt).")
    net, normalization, _ = checkpoint_manager.load_checkpoint(
        ckpt_path,
        expected_action_space=cfg.action_space,
        expected_input_size=config.FEATURES_PER_FRAME * cfg.history_size,
    )
    return net, normalization


def run_evaluate(args):
    """Handles the logic for evaluating one policy with a fixed number of UEs."""
    out_dir = os.path.abspath(args.out)
    policy = PolicyKind(args.policy)

    try:
        cfg = experiment_config.config_from_args(args)
        net, normalization = load_policy_network(cfg, policy, args.ckpt)
    except DrxSimError as e:
        logging.error(f"Error: {e}")
        sys.exit(1)

    utils.display_settings(
        cfg,
        "Evaluate Policy",
        out_dir,
        extra={"Policy": policy.value, "UEs": cfg.num_ues, "Checkpoint": args.ckpt or "none"},
    )

    try:
        result = core.evaluate(
            cfg,
            policy,
            cfg.num_ues,
            out_dir=out_dir,
            net=net,
            normalization=normalization,
            record_trace=args.record_trace,
        )
        if args.record_trace:
            emitted = sum(len(trace["ce_log"]) for trace in result.traces)
            print(f"Recorded {len(result.traces)} episode trace(s) with {emitted} emitted CE(s).")
        utils.print_eval_summary([result])
        print("Evaluation complete.")

    except DrxSimError as e:
        logging.error(f"Evaluation aborted: {e}")
        sys.exit(1)
    except Exception as e:
        logging.exception(f"An unexpected error occurred during evaluation: {e}")
        print("\nAn error occurred. Please check the logs or run with -v for more details.")
        sys.exit(1)
