import csv
import logging
import os

from .errors import ResultsWriteError

LEARNING_CURVE_FIELDS = [
    "run",
    "episode",
    "num_ues",
    "epsilon",
    "cum_reward_per_ue",
    "mean_satisfaction",
]
EVAL_FIELDS = [
    "policy",
    "action_space",
    "num_ues",
    "ue_id",
    "activity",
    "mean_delay_ms",
    "delay_p5_ms",
    "delay_p50_ms",
    "delay_p95_ms",
    "satisfaction",
    "satisfaction_final",
]
ACTIONS_FIELDS = [
    "policy",
    "action_space",
    "action_index",
    "skip_ms",
    "count",
    "frequency",
]
TUNING_FIELDS = [
    "learning_rate",
    "discount_factor",
    "run",
    "mean_cum_reward_per_ue",
    "best_cum_reward_per_ue",
]


def _blank_none(value):
    return "" if value is None else value


def append_rows(path, fieldnames, rows):
    """
    Appends rows to a CSV file, writing the header only when the file is new or empty.

    Raises:
        ResultsWriteError: If the file cannot be written.
    """
    rows = list(rows)
    try:
        write_header = not os.path.isfile(path) or os.path.getsize(path) == 0
        with open(path, "a", newline="") as csvfile:
            writer = csv.DictWriter(csvfile, fieldnames=fieldnames)
            if write_header:
                writer.writeheader()
            for row in rows:
                writer.writerow({field: _blank_none(row.get(field)) for field in fieldnames})
    except OSError as e:
        raise ResultsWriteError(f"Could not write results to '{path}': {e}") from e
    logging.debug(f"Appended {len(rows)} row(s) to '{path}'")
    return len(rows)


def write_learning_curve_row(path, record):
    return append_rows(path, LEARNING_CURVE_FIELDS, [record])


def write_eval_row(path, record):
    return append_rows(path, EVAL_FIELDS, [record])


def write_action_rows(path, records):
    return append_rows(path, ACTIONS_FIELDS, records)


def write_tuning_rows(path, records):
    return append_rows(path, TUNING_FIELDS, records)


def read_rows(path):
    """Reads back a results file as a list of dicts of strings."""
    try:
        with open(path, newline="") as csvfile:
            return list(csv.DictReader(csvfile))
    except OSError as e:
        raise ResultsWriteError(f"Could not read results from '{path}': {e}") from e


def merge_csv_files(paths, out_path, fieldnames):
    """Concatenates per-run CSV files into one file with a single header."""
    rows = []
    for path in paths:
        rows.extend(read_rows(path))
    if os.path.exists(out_path):
        os.remove(out_path)
    append_rows(out_path, fieldnames, rows)
    logging.info(f"Merged {len(paths)} file(s) ({len(rows)} rows) into '{out_path}'")
    return len(rows)
