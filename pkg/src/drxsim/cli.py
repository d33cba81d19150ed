import logging
import sys

from . import arguments, config, modes

MODES = {
    "train": modes.run_train,
    "eval": modes.run_evaluate,
    "sweep-eval": modes.run_sweep_eval,
    "tune": modes.run_tune,
    "inspect-ckpt": modes.run_inspect_checkpoint,
}


def setup_logging(log_file=config.DEFAULT_LOG_FILENAME):
    """Logs to both console and file through the root logger."""
    log_formatter = logging.Formatter("%(asctime)s - %(levelname)s - %(message)s")

    console_handler = logging.StreamHandler(sys.stdout)
    console_handler.setFormatter(log_formatter)

    file_handler = logging.FileHandler(log_file)
    file_handler.setFormatter(log_formatter)

    root_logger = logging.getLogger()
    root_logger.setLevel(logging.INFO)
    root_logger.addHandler(console_handler)
    root_logger.addHandler(file_handler)


def main(argv=None):
    """Handle command-line arguments and run the selected simulator mode."""
    setup_logging()
    args = arguments.parse_arguments(argv)

    run_mode = MODES.get(args.mode)
    if run_mode is None:
        logging.error(f"Error: Unknown mode '{args.mode}'.")
        sys.exit(1)
    run_mode(args)


if __name__ == "__main__":
    main()
