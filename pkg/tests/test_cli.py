import logging

import pytest

from drxsim import cli
from drxsim.arguments import parse_arguments
from drxsim.results_writer import read_rows


@pytest.fixture
def workdir(tmp_path, monkeypatch):
    monkeypatch.chdir(tmp_path)
    root = logging.getLogger()
    handlers = list(root.handlers)
    yield tmp_path
    for handler in root.handlers[len(handlers):]:
        handler.close()
    root.handlers[:] = handlers


@pytest.mark.parametrize(
    "argv",
    [
        ["eval", "--policy", "rl", "--num-ues", "2"],
        ["eval", "--policy", "timers", "--num-ues", "0"],
        ["train", "--num-ues", "12"],
        ["train", "-w", "0"],
        ["train", "--episodes", "0"],
        ["train", "--action-space", "3"],
        ["sweep-eval", "--max-ues", "10"],
        ["tune", "--discount-factors", "0.9,high"],
        ["tune", "--learning-rates", ","],
        ["bogus"],
    ],
)
def test_invalid_arguments(argv):
    with pytest.raises(SystemExit):
        parse_arguments(argv)


def test_eval_arguments():
    args = parse_arguments(["eval", "--policy", "naive", "--num-ues", "4", "--episodes", "3"])
    assert (args.mode, args.policy, args.num_ues, args.eval_episodes) == ("eval", "naive", 4, 3)
    assert args.out == "out"
    assert args.ckpt is None


def test_train_inspect_and_eval(workdir, capsys):
    train_argv = ["train", "--episodes", "2", "--episode-ttis", "160", "--runs", "2", "-w", "1"]
    cli.main(train_argv)
    out = capsys.readouterr().out
    assert "Training complete." in out

    ckpt = workdir / "out" / "checkpoint_best.json"
    assert ckpt.exists()
    assert (workdir / "out" / "run_00" / "checkpoint_final.json").exists()
    assert len((workdir / "out" / "learning_curve.csv").read_text().splitlines()) == 5

    cli.main(["inspect-ckpt", str(ckpt)])
    out = capsys.readouterr().out
    assert "Action space: 2" in out
    assert "Layer sizes: 36 -> 40 -> 2" in out

    cli.main(
        ["eval", "--policy", "rl", "--ckpt", str(ckpt), "--num-ues", "2", "--episodes", "1", "--episode-ttis", "160"]
    )
    assert "Evaluation complete." in capsys.readouterr().out
    assert len((workdir / "out" / "eval.csv").read_text().splitlines()) == 3


def test_eval_with_mismatched_checkpoint(workdir):
    cli.main(["train", "--episodes", "1", "--episode-ttis", "64", "--runs", "1", "-w", "1"])
    ckpt = workdir / "out" / "checkpoint_best.json"
    with pytest.raises(SystemExit) as exc:
        cli.main(
            ["eval", "--policy", "rl", "--ckpt", str(ckpt), "--num-ues", "1", "--action-space", "7", "--episode-ttis", "64"]
        )
    assert exc.value.code == 1


def test_inspect_missing_checkpoint(workdir):
    with pytest.raises(SystemExit) as exc:
        cli.main(["inspect-ckpt", str(workdir / "absent.json")])
    assert exc.value.code == 1


def test_sweep_eval_baselines(workdir, capsys):
    cli.main(["sweep-eval", "--max-ues", "2", "--episodes", "1", "--episode-ttis", "64"])
    assert "Sweep complete." in capsys.readouterr().out
    # 4 baselines: 1 + 2 UE rows each
    assert len((workdir / "out" / "eval.csv").read_text().splitlines()) == 1 + 4 * 3


def test_tune_from_config_file(workdir, capsys):
    cfg_path = workdir / "tune.cfg"
    cfg_path.write_text("tune_learning_rates = 1e-3, 1e-4\ntune_discount_factors = 0.9, 1.0\ntune_runs = 1\n")
    cli.main(["tune", "--config", str(cfg_path), "--episodes", "1", "--episode-ttis", "64", "-w", "1"])
    out = capsys.readouterr().out
    assert "Tuning complete." in out
    assert out.count("<- best") == 1
    rows = read_rows(workdir / "out" / "tuning.csv")
    assert {(row["learning_rate"], row["discount_factor"]) for row in rows} == {
        ("0.001", "0.9"),
        ("0.001", "1.0"),
        ("0.0001", "0.9"),
        ("0.0001", "1.0"),
    }
    assert (workdir / "out" / "lr_0.001_gamma_0.9" / "run_00" / "learning_curve.csv").exists()


def test_tune_grid_from_flags(workdir, capsys):
    cfg_path = workdir / "tune.cfg"
    cfg_path.write_text("tune_runs = 1\n")
    argv = ["tune", "--config", str(cfg_path), "--learning-rates", "1e-3", "--discount-factors", "0.5"]
    cli.main(argv + ["--episodes", "1", "--episode-ttis", "64", "-w", "1"])
    assert "Tuning complete." in capsys.readouterr().out
    rows = read_rows(workdir / "out" / "tuning.csv")
    assert [(row["learning_rate"], row["discount_factor"]) for row in rows] == [("0.001", "0.5")]


def test_sweep_eval_skips_unstable_points(workdir, capsys):
    cfg_path = workdir / "tiny_cap.cfg"
    cfg_path.write_text("queue_cap_bits = 1\n")
    cli.main(["sweep-eval", "--config", str(cfg_path), "--max-ues", "1", "--episodes", "1", "--episode-ttis", "64"])
    out = capsys.readouterr().out
    assert "Unstable (skipped): always_on U=1, timers U=1, naive U=1, random U=1" in out
    assert "Sweep complete." in out
    assert not (workdir / "out" / "eval.csv").exists()
