import numpy as np
import pytest

from drxsim.experiment_config import ExperimentConfig


@pytest.fixture
def make_config():
    """Factory for short-episode configurations; keyword arguments override the defaults."""

    def _make(**overrides):
        settings = {
            "episode_ttis": 320,
            "episodes": 2,
            "eval_episodes": 2,
            "runs": 1,
            "batch_size": 16,
            "erm_size": 2000,
            "seed": 7,
        }
        settings.update(overrides)
        return ExperimentConfig(**settings)

    return _make


@pytest.fixture
def rng():
    return np.random.default_rng(1234)
