import argparse
import logging

from . import config


def _float_list(raw):
    try:
        values = tuple(float(part) for part in raw.split(",") if part.strip())
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected comma-separated numbers, got {raw!r}")
    if not values:
        raise argparse.ArgumentTypeError("expected at least one value")
    return values


def _add_common_options(subparser, with_out=True):
    group = subparser.add_argument_group("Common Options")
    group.add_argument(
        "--config",
        metavar="<file>",
        default=None,
        help="Flat key = value configuration file. Defaults apply to every key it leaves out.",
    )
    group.add_argument(
        "--seed",
        type=int,
        default=None,
        help=f"Base seed (config value, default {config.DEFAULT_SEED}).",
    )
    if with_out:
        group.add_argument(
            "--out",
            metavar="<dir>",
            default="out",
            help="Output directory for CSV files and checkpoints.",
        )
    group.add_argument(
        "-v",
        "--verbose",
        action="store_true",
        help="Enable verbose (DEBUG level) logging.",
    )


def _add_training_options(subparser):
    group = subparser.add_argument_group("Training Options")
    group.add_argument(
        "--action-space",
        type=int,
        choices=config.ACTION_SPACES,
        default=None,
        help=f"Size of the action space: 2 (LongDrxCommand) or 7 (PDCCH skipping). Config default {config.DEFAULT_ACTION_SPACE}.",
    )
    group.add_argument(
        "--episodes",
        type=int,
        default=None,
        help=f"Episodes per training run (config default {config.TRAIN_EPISODES}).",
    )
    group.add_argument(
        "--episode-ttis",
        type=int,
        default=None,
        help=f"TTIs per episode (config default {config.EPISODE_TTIS}).",
    )
    group.add_argument(
        "--num-ues",
        type=int,
        default=None,
        help="Fixed cell size; 0 draws a new size every episode.",
    )
    group.add_argument(
        "-w",
        "--workers",
        type=int,
        default=config.MAX_WORKERS,
        help="Maximum number of worker processes for independent runs.",
    )


def parse_arguments(argv=None):
    """Parses command-line arguments for the DRX simulator."""
    parser = argparse.ArgumentParser(
        prog="drxsim",
        description=(
            "TTI-level simulator of a 5G downlink cell with DRX, in which a DQN agent learns "
            "when to send UEs to sleep with MAC CEs, and evaluation of baseline policies."
        ),
        formatter_class=argparse.ArgumentDefaultsHelpFormatter,
    )
    subparsers = parser.add_subparsers(dest="mode", metavar="<mode>", required=True)

    train_parser = subparsers.add_parser(
        "train",
        help="Train the DQN agent over one or more independent runs.",
        formatter_class=argparse.ArgumentDefaultsHelpFormatter,
    )
    _add_common_options(train_parser)
    _add_training_options(train_parser)
    train_parser.add_argument(
        "--runs",
        type=int,
        default=None,
        help=f"Number of independent training runs (config default {config.TRAIN_RUNS}).",
    )

    eval_parser = subparsers.add_parser(
        "eval",
        help="Evaluate one policy with a fixed number of UEs.",
        formatter_class=argparse.ArgumentDefaultsHelpFormatter,
    )
    _add_common_options(eval_parser)
    eval_parser.add_argument(
        "--policy",
        choices=config.POLICY_NAMES,
        required=True,
        help="Policy to evaluate.",
    )
    eval_parser.add_argument(
        "--ckpt",
        metavar="<file>",
        default=None,
        help="Checkpoint of the trained agent (required for --policy rl).",
    )
    eval_parser.add_argument(
        "--num-ues",
        type=int,
        required=True,
        help=f"Number of UEs in the cell (1..{config.MAX_UES}).",
    )
    eval_parser.add_argument(
        "--episodes",
        dest="eval_episodes",
        type=int,
        default=None,
        help=f"Evaluation episodes (config default {config.EVAL_EPISODES}).",
    )
    eval_parser.add_argument(
        "--action-space",
        type=int,
        choices=config.ACTION_SPACES,
        default=None,
        help="Action space the checkpoint was trained with.",
    )
    eval_parser.add_argument(
        "--episode-ttis",
        type=int,
        default=None,
        help=f"TTIs per episode (config default {config.EPISODE_TTIS}).",
    )
    eval_parser.add_argument(
        "--record-trace",
        action="store_true",
        help="Keep per-TTI activity traces and the log of emitted CEs in memory.",
    )

    sweep_parser = subparsers.add_parser(
        "sweep-eval",
        help="Evaluate every policy for every cell size into one eval.csv.",
        formatter_class=argparse.ArgumentDefaultsHelpFormatter,
    )
    _add_common_options(sweep_parser)
    sweep_parser.add_argument(
        "--ckpt",
        metavar="<file>",
        action="append",
        default=None,
        help="Checkpoint of a trained agent; repeat to compare several (e.g. |A|=2 and |A|=7).",
    )
    sweep_parser.add_argument(
        "--max-ues",
        type=int,
        default=config.MAX_UES,
        help="Largest cell size of the sweep.",
    )
    sweep_parser.add_argument(
        "--episodes",
        dest="eval_episodes",
        type=int,
        default=None,
        help=f"Evaluation episodes per (policy, cell size) (config default {config.EVAL_EPISODES}).",
    )
    sweep_parser.add_argument(
        "--episode-ttis",
        type=int,
        default=None,
        help=f"TTIs per episode (config default {config.EPISODE_TTIS}).",
    )

    tune_parser = subparsers.add_parser(
        "tune",
        help="Compare learning rates and discount factors over short independent training runs.",
        formatter_class=argparse.ArgumentDefaultsHelpFormatter,
    )
    _add_common_options(tune_parser)
    _add_training_options(tune_parser)
    tune_group = tune_parser.add_argument_group("Tuning Options")
    tune_group.add_argument(
        "--learning-rates",
        type=_float_list,
        metavar="<list>",
        default=None,
        help="Comma-separated learning rates to compare (config key tune_learning_rates).",
    )
    tune_group.add_argument(
        "--discount-factors",
        type=_float_list,
        metavar="<list>",
        default=None,
        help="Comma-separated discount factors to compare (config key tune_discount_factors).",
    )

    inspect_parser = subparsers.add_parser(
        "inspect-ckpt",
        help="Show the action space, layer sizes and metadata stored in a checkpoint.",
        formatter_class=argparse.ArgumentDefaultsHelpFormatter,
    )
    inspect_parser.add_argument("checkpoint", metavar="<file>", help="Checkpoint file to inspect.")
    inspect_parser.add_argument(
        "-v",
        "--verbose",
        action="store_true",
        help="Enable verbose (DEBUG level) logging.",
    )

    args = parser.parse_args(argv)

    # Argument validation
    num_ues = getattr(args, "num_ues", None)
    if num_ues is not None and not 0 <= num_ues <= config.MAX_UES:
        parser.error(f"Number of UEs must be between 0 and {config.MAX_UES}, got {num_ues}")
    if args.mode == "eval" and num_ues == 0:
        parser.error("Evaluation needs a fixed number of UEs (1 or more).")
    if args.mode == "eval" and args.policy == "rl" and not args.ckpt:
        parser.error("--policy rl requires --ckpt.")
    if getattr(args, "workers", 1) is not None and getattr(args, "workers", 1) <= 0:
        parser.error(f"Number of workers must be positive, got {args.workers}")
    if args.mode == "sweep-eval" and not 1 <= args.max_ues <= config.MAX_UES:
        parser.error(f"--max-ues must be between 1 and {config.MAX_UES}, got {args.max_ues}")
    for name in ("episodes", "eval_episodes", "episode_ttis", "runs"):
        value = getattr(args, name, None)
        if value is not None and value <= 0:
            parser.error(f"--{name.replace('_', '-')} must be positive, got {value}")

    # Set logging level
    if args.verbose:
        logging.getLogger().setLevel(logging.DEBUG)
        logging.debug("Verbose logging enabled.")
    else:
        logging.getLogger().setLevel(logging.INFO)

    return args
