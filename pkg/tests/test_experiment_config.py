from types import SimpleNamespace

import pytest
from scipy.special import j0

from drxsim import config
from drxsim.errors import ConfigError
from drxsim.experiment_config import (
    ExperimentConfig,
    config_from_args,
    load_experiment_config,
    parse_config_text,
)


def test_defaults():
    cfg = ExperimentConfig()
    assert cfg.episode_ttis == 8000
    assert cfg.action_space == 2
    assert cfg.drx_config().long_cycle_ttis == 16
    assert cfg.phy_params().csi_period_ttis == 10
    assert cfg.feature_normalization().q_sat_bits == config.Q_SAT_BITS


def test_parse_config_text():
    text = """
    # short run
    episodes = 5          # trailing comment
    learning_rate = 1e-4
    output_activation = softmax
    ue_count_weights = 1, 1, 1, 1, 1, 1, 1, 2.5, 2.5
    """
    values = parse_config_text(text)
    assert values == {
        "episodes": 5,
        "learning_rate": 1e-4,
        "output_activation": "softmax",
        "ue_count_weights": (1.0, 1.0, 1.0, 1.0, 1.0, 1.0, 1.0, 2.5, 2.5),
    }


@pytest.mark.parametrize(
    "text, message",
    [
        ("episodes = 5\nbogus = 1", ":2: unknown configuration key 'bogus'"),
        ("episodes = 5\nepisodes = 6", "duplicate configuration key 'episodes'"),
        ("episodes 5", "expected 'key = value'"),
        ("episodes = 2.5", "bad value for 'episodes'"),
    ],
)
def test_parse_errors(text, message):
    with pytest.raises(ConfigError, match=message):
        parse_config_text(text, source="exp.cfg")


@pytest.mark.parametrize(
    "overrides",
    [
        {"rho": 1.0},
        {"num_ues": 10},
        {"action_space": 3},
        {"gamma": 1.5},
        {"optimizer": "rmsprop"},
        {"ue_count_weights": (1.0, 2.0)},
        {"epsilon_start": 0.1, "epsilon_end": 0.5},
        {"tti_ms": 2, "drx_on_duration_ms": 7},
        {"learning_rate": float("nan")},
        {"tune_discount_factors": (0.9, 1.2)},
        {"tune_discount_factors": ()},
    ],
)
def test_invalid_values(overrides):
    with pytest.raises(ConfigError):
        ExperimentConfig(**overrides)


def test_load_file(tmp_path):
    path = tmp_path / "exp.cfg"
    path.write_text("episodes = 3\nseed = 11\n")
    cfg = load_experiment_config(str(path))
    assert (cfg.episodes, cfg.seed) == (3, 11)
    assert cfg.runs == config.TRAIN_RUNS

    path.write_text("episodes = 0\n")
    with pytest.raises(ConfigError, match="exp.cfg"):
        load_experiment_config(str(path))
    with pytest.raises(ConfigError):
        load_experiment_config(str(tmp_path / "absent.cfg"))


def test_replace():
    cfg = ExperimentConfig()
    changed = cfg.replace(episodes=4, seed=None)
    assert changed.episodes == 4
    assert changed.seed == cfg.seed
    with pytest.raises(ConfigError):
        cfg.replace(unknown_key=1)


def test_rho_from_doppler():
    cfg = ExperimentConfig(carrier_ghz=3.5, velocity_mps=30.0)
    doppler_hz = 3.5e9 * 30.0 / config.SPEED_OF_LIGHT_MPS
    assert cfg.effective_rho == pytest.approx(j0(2 * 3.141592653589793 * doppler_hz * 1e-3))
    assert ExperimentConfig().effective_rho == config.RHO


def test_command_line_overrides(tmp_path):
    path = tmp_path / "exp.cfg"
    path.write_text("episodes = 3\nseed = 11\n")
    args = SimpleNamespace(config=str(path), seed=5, episodes=None, action_space=7)
    cfg = config_from_args(args)
    assert (cfg.seed, cfg.episodes, cfg.action_space) == (5, 3, 7)


def test_tuning_grid_from_file_and_flags(tmp_path):
    path = tmp_path / "exp.cfg"
    path.write_text("tune_discount_factors = 0.9, 1.0\n")
    cfg = config_from_args(SimpleNamespace(config=str(path)))
    assert cfg.tune_discount_factors == (0.9, 1.0)

    args = SimpleNamespace(config=str(path), learning_rates=(1e-3,), discount_factors=(0.5,))
    cfg = config_from_args(args)
    assert (cfg.tune_learning_rates, cfg.tune_discount_factors) == ((1e-3,), (0.5,))
