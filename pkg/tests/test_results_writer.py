import pytest

from drxsim.errors import ResultsWriteError
from drxsim.results_writer import (
    LEARNING_CURVE_FIELDS,
    EVAL_FIELDS,
    merge_csv_files,
    read_rows,
    write_eval_row,
    write_learning_curve_row,
)


def _curve_row(run, episode):
    return {
        "run": run,
        "episode": episode,
        "num_ues": 3,
        "epsilon": 0.8,
        "cum_reward_per_ue": 12.5,
        "mean_satisfaction": 0.97,
    }


def test_header_written_once(tmp_path):
    path = tmp_path / "learning_curve.csv"
    write_learning_curve_row(path, _curve_row(0, 0))
    write_learning_curve_row(path, _curve_row(0, 1))

    lines = path.read_text().splitlines()
    assert lines[0] == ",".join(LEARNING_CURVE_FIELDS)
    assert len(lines) == 3
    rows = read_rows(path)
    assert [row["episode"] for row in rows] == ["0", "1"]
    assert rows[1]["mean_satisfaction"] == "0.97"


def test_missing_delay_written_blank(tmp_path):
    path = tmp_path / "eval.csv"
    write_eval_row(path, {"policy": "timers", "action_space": 2, "num_ues": 1, "ue_id": 0, "activity": 0.5})
    row = read_rows(path)[0]
    assert list(row) == EVAL_FIELDS
    assert row["mean_delay_ms"] == ""
    assert row["satisfaction"] == ""


def test_merge(tmp_path):
    first, second = tmp_path / "a.csv", tmp_path / "b.csv"
    write_learning_curve_row(first, _curve_row(0, 0))
    write_learning_curve_row(second, _curve_row(1, 0))
    write_learning_curve_row(second, _curve_row(1, 1))
    merged = tmp_path / "merged.csv"

    assert merge_csv_files([first, second], merged, LEARNING_CURVE_FIELDS) == 3
    assert merge_csv_files([first, second], merged, LEARNING_CURVE_FIELDS) == 3
    assert [row["run"] for row in read_rows(merged)] == ["0", "1", "1"]


def test_write_error(tmp_path):
    with pytest.raises(ResultsWriteError):
        write_learning_curve_row(tmp_path / "missing" / "curve.csv", _curve_row(0, 0))
    with pytest.raises(ResultsWriteError):
        read_rows(tmp_path / "nothing.csv")
