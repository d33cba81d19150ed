"""
Experiment configuration: defaults from drxsim.config, overridable by a flat
`key = value` file and by command-line flags.
"""

import dataclasses
import logging
import math
from dataclasses import dataclass

from . import config
from .agent import FeatureNormalization
from .drx import DrxConfig
from .errors import ConfigError
from .phy import PhyParams, rho_from_doppler
from .traffic import XrTrafficParams


@dataclass(frozen=True)
class ExperimentConfig:
    # System settings
    tti_ms: int = config.TTI_MS
    bandwidth_mhz: float = config.BANDWIDTH_MHZ
    bw_eff_mhz: float = config.BW_EFF_MHZ
    rho: float = config.RHO
    carrier_ghz: float = 0.0
    velocity_mps: float = 0.0
    csi_period_ms: int = config.CSI_PERIOD_MS
    snr_db: float = config.SNR_DB
    link_error_model: str = config.DEFAULT_LINK_ERROR_MODEL
    drx_long_cycle_ms: int = config.DRX_LONG_CYCLE_MS
    drx_on_duration_ms: int = config.DRX_ON_DURATION_MS
    drx_inactivity_timer_ms: int = config.DRX_INACTIVITY_TIMER_MS
    drx_cycle_offset_ms: int = config.DRX_CYCLE_OFFSET_MS
    num_ues: int = 0
    ue_count_weights: tuple = config.UE_COUNT_WEIGHTS

    # XR traffic
    frame_interval_ms: float = config.FRAME_INTERVAL_MS
    mean_packet_bits: int = config.MEAN_PACKET_BITS
    size_std_frac: float = config.SIZE_STD_FRAC
    size_min_frac: float = config.SIZE_MIN_FRAC
    size_max_frac: float = config.SIZE_MAX_FRAC
    jitter_std_ms: float = config.JITTER_STD_MS
    jitter_min_ms: float = config.JITTER_MIN_MS
    jitter_max_ms: float = config.JITTER_MAX_MS

    # Learning
    erm_size: int = config.ERM_SIZE
    batch_size: int = config.BATCH_SIZE
    hidden_neurons: int = config.HIDDEN_NEURONS
    history_size: int = config.HISTORY_SIZE
    output_activation: str = config.DEFAULT_OUTPUT_ACTIVATION
    huber_delta: float = config.HUBER_DELTA
    target_sync_steps: int = config.TARGET_SYNC_STEPS
    train_every_ttis: int = config.TRAIN_EVERY_TTIS
    optimizer: str = config.DEFAULT_OPTIMIZER
    learning_rate: float = config.LEARNING_RATE
    gamma: float = config.GAMMA
    epsilon_start: float = config.EPSILON_START
    epsilon_end: float = config.EPSILON_END
    epsilon_step_episodes: int = config.EPSILON_STEP_EPISODES
    epsilon_decay_episodes: int = config.EPSILON_DECAY_EPISODES
    eval_epsilon: float = config.EVAL_EPSILON

    # KPIs and experiment size
    satisfaction_window: int = config.SATISFACTION_WINDOW
    beta: float = config.BETA
    delta_ms: int = config.DELTA_MS
    episode_ttis: int = config.EPISODE_TTIS
    episodes: int = config.TRAIN_EPISODES
    eval_episodes: int = config.EVAL_EPISODES
    runs: int = config.TRAIN_RUNS
    action_space: int = config.DEFAULT_ACTION_SPACE
    q_sat_bits: int = config.Q_SAT_BITS
    queue_cap_bits: int = config.QUEUE_CAP_BITS
    age_norm_ttis: int = config.AGE_NORM_TTIS
    max_ues: int = config.MAX_UES
    seed: int = config.DEFAULT_SEED
    tune_learning_rates: tuple = config.TUNE_LEARNING_RATES
    tune_discount_factors: tuple = config.TUNE_DISCOUNT_FACTORS
    tune_runs: int = config.TUNE_RUNS
    log_every_episodes: int = config.LOG_EVERY_EPISODES

    def __post_init__(self):
        validate(self)

    def replace(self, **overrides):
        """Copy with the given fields changed; None values are ignored."""
        overrides = {k: v for k, v in overrides.items() if v is not None}
        unknown = set(overrides) - FIELD_NAMES
        if unknown:
            raise ConfigError(f"Unknown configuration key(s): {', '.join(sorted(unknown))}")
        return dataclasses.replace(self, **overrides)

    def to_dict(self):
        return dataclasses.asdict(self)

    def traffic_params(self):
        return XrTrafficParams(
            frame_interval_ms=self.frame_interval_ms,
            mean_packet_bits=self.mean_packet_bits,
            size_std_frac=self.size_std_frac,
            size_min_frac=self.size_min_frac,
            size_max_frac=self.size_max_frac,
            jitter_std_ms=self.jitter_std_ms,
            jitter_min_ms=self.jitter_min_ms,
            jitter_max_ms=self.jitter_max_ms,
        )

    @property
    def effective_rho(self):
        if self.carrier_ghz > 0 and self.velocity_mps > 0:
            return rho_from_doppler(self.carrier_ghz * 1e9, self.velocity_mps, self.tti_ms * 1e-3)
        return self.rho

    def phy_params(self):
        return PhyParams(
            rho=self.effective_rho,
            snr_linear=10.0 ** (self.snr_db / 10.0),
            bw_eff_hz=self.bw_eff_mhz * 1e6,
            tti_s=self.tti_ms * 1e-3,
            csi_period_ttis=self.csi_period_ms // self.tti_ms,
            link_error_model=self.link_error_model,
        )

    def drx_config(self):
        return DrxConfig(
            long_cycle_ttis=self.drx_long_cycle_ms // self.tti_ms,
            on_duration_ttis=self.drx_on_duration_ms // self.tti_ms,
            inactivity_timer_ttis=self.drx_inactivity_timer_ms // self.tti_ms,
            cycle_offset_ttis=self.drx_cycle_offset_ms // self.tti_ms,
        )

    def feature_normalization(self):
        cycle = self.drx_long_cycle_ms // self.tti_ms
        return FeatureNormalization(
            ttnc_ttis=cycle,
            age_ttis=self.age_norm_ttis,
            q_sat_bits=self.q_sat_bits,
            remaining_ttis=cycle,
            max_ues=self.max_ues,
        )


FIELD_TYPES = {f.name: f.type for f in dataclasses.fields(ExperimentConfig)}
FIELD_NAMES = frozenset(FIELD_TYPES)

# (lower, upper, lower inclusive, upper inclusive); None leaves the side open.
_BOUNDS = {
    "tti_ms": (1, None, True, True),
    "bandwidth_mhz": (0, None, False, True),
    "bw_eff_mhz": (0, None, False, True),
    "rho": (0, 1, False, False),
    "carrier_ghz": (0, None, True, True),
    "velocity_mps": (0, None, True, True),
    "csi_period_ms": (1, None, True, True),
    "drx_long_cycle_ms": (1, None, True, True),
    "drx_on_duration_ms": (1, None, True, True),
    "drx_inactivity_timer_ms": (1, None, True, True),
    "drx_cycle_offset_ms": (0, None, True, True),
    "num_ues": (0, config.MAX_UES, True, True),
    "frame_interval_ms": (0, None, False, True),
    "mean_packet_bits": (1, None, True, True),
    "erm_size": (1, None, True, True),
    "batch_size": (1, None, True, True),
    "hidden_neurons": (1, None, True, True),
    "history_size": (1, None, True, True),
    "huber_delta": (0, None, False, True),
    "target_sync_steps": (1, None, True, True),
    "train_every_ttis": (1, None, True, True),
    "learning_rate": (0, None, False, True),
    "gamma": (0, 1, True, True),
    "epsilon_start": (0, 1, False, True),
    "epsilon_end": (0, 1, False, True),
    "epsilon_step_episodes": (1, None, True, True),
    "epsilon_decay_episodes": (1, None, True, True),
    "eval_epsilon": (0, 1, True, True),
    "satisfaction_window": (1, None, True, True),
    "beta": (0, 1, False, True),
    "delta_ms": (0, None, True, True),
    "episode_ttis": (1, None, True, True),
    "episodes": (1, None, True, True),
    "eval_episodes": (1, None, True, True),
    "runs": (1, None, True, True),
    "q_sat_bits": (1, None, True, True),
    "queue_cap_bits": (1, None, True, True),
    "age_norm_ttis": (1, None, True, True),
    "max_ues": (1, config.MAX_UES, True, True),
    "tune_runs": (1, None, True, True),
    "log_every_episodes": (1, None, True, True),
}

_CHOICES = {
    "link_error_model": config.LINK_ERROR_MODELS,
    "output_activation": config.OUTPUT_ACTIVATIONS,
    "optimizer": config.OPTIMIZERS,
    "action_space": config.ACTION_SPACES,
}


def _check_bounds(name, value):
    lo, hi, lo_inc, hi_inc = _BOUNDS[name]
    if isinstance(value, float) and not math.isfinite(value):
        raise ConfigError(f"'{name}' must be finite, got {value}")
    if lo is not None and (value < lo or (value == lo and not lo_inc)):
        raise ConfigError(f"'{name}' = {value} is below its lower bound {lo}")
    if hi is not None and (value > hi or (value == hi and not hi_inc)):
        raise ConfigError(f"'{name}' = {value} is above its upper bound {hi}")


def validate(cfg):
    for name in _BOUNDS:
        _check_bounds(name, getattr(cfg, name))
    for name, choices in _CHOICES.items():
        if getattr(cfg, name) not in choices:
            raise ConfigError(f"'{name}' must be one of {choices}, got {getattr(cfg, name)!r}")

    if len(cfg.ue_count_weights) != cfg.max_ues:
        raise ConfigError(
            f"'ue_count_weights' needs {cfg.max_ues} entries, got {len(cfg.ue_count_weights)}"
        )
    if any(w < 0 for w in cfg.ue_count_weights) or sum(cfg.ue_count_weights) <= 0:
        raise ConfigError("'ue_count_weights' must be non-negative with a positive sum")
    if cfg.num_ues > cfg.max_ues:
        raise ConfigError(f"'num_ues' ({cfg.num_ues}) exceeds 'max_ues' ({cfg.max_ues})")
    if cfg.epsilon_end > cfg.epsilon_start:
        raise ConfigError("'epsilon_end' cannot exceed 'epsilon_start'")
    if cfg.epsilon_step_episodes > cfg.epsilon_decay_episodes:
        raise ConfigError("'epsilon_step_episodes' cannot exceed 'epsilon_decay_episodes'")
    if not cfg.tune_learning_rates or any(lr <= 0 for lr in cfg.tune_learning_rates):
        raise ConfigError("'tune_learning_rates' must list positive learning rates")
    if not cfg.tune_discount_factors or any(not 0 <= g <= 1 for g in cfg.tune_discount_factors):
        raise ConfigError("'tune_discount_factors' must list discount factors in [0, 1]")
    for name in ("csi_period_ms", "drx_long_cycle_ms", "drx_on_duration_ms", "drx_inactivity_timer_ms", "drx_cycle_offset_ms"):
        if getattr(cfg, name) % cfg.tti_ms:
            raise ConfigError(f"'{name}' must be a multiple of tti_ms ({cfg.tti_ms})")
    if cfg.drx_on_duration_ms > cfg.drx_long_cycle_ms:
        raise ConfigError("'drx_on_duration_ms' cannot exceed 'drx_long_cycle_ms'")

    # Range checks on the traffic and PHY views live with those types.
    try:
        cfg.traffic_params()
        cfg.phy_params()
    except ValueError as e:
        raise ConfigError(str(e)) from e


def _coerce(name, raw):
    kind = FIELD_TYPES[name]
    if kind is tuple:
        return tuple(float(part) for part in raw.split(",") if part.strip())
    if kind is int:
        as_float = float(raw)
        if not as_float.is_integer():
            raise ValueError(f"expected an integer, got {raw!r}")
        return int(as_float)
    if kind is float:
        return float(raw)
    return raw


def parse_config_text(text, source="<string>"):
    """
    Parses flat `key = value` lines into a dict of typed overrides.

    Raises:
        ConfigError: On syntax errors, unknown or duplicate keys and unparsable values.
    """
    values = {}
    for lineno, line in enumerate(text.splitlines(), start=1):
        line = line.split("#", 1)[0].strip()
        if not line:
            continue
        if "=" not in line:
            raise ConfigError(f"{source}:{lineno}: expected 'key = value', got {line!r}")
        key, raw = (part.strip() for part in line.split("=", 1))
        if key not in FIELD_NAMES:
            raise ConfigError(f"{source}:{lineno}: unknown configuration key '{key}'")
        if key in values:
            raise ConfigError(f"{source}:{lineno}: duplicate configuration key '{key}'")
        try:
            values[key] = _coerce(key, raw)
        except ValueError as e:
            raise ConfigError(f"{source}:{lineno}: bad value for '{key}': {e}") from e
    return values


def load_experiment_config(path=None):
    """
    Loads an ExperimentConfig from a config file, or the defaults when path is None.

    Raises:
        ConfigError: On unreadable files and any invalid entry.
    """
    if path is None:
        return ExperimentConfig()
    try:
        with open(path) as f:
            text = f.read()
    except OSError as e:
        raise ConfigError(f"Could not read config file '{path}': {e}") from e

    values = parse_config_text(text, source=path)
    try:
        cfg = ExperimentConfig(**values)
    except ConfigError as e:
        raise ConfigError(f"{path}: {e}") from e
    logging.info(f"Loaded {len(values)} setting(s) from config file '{path}'")
    return cfg


# Command-line flags that override the config file (argparse dest -> key).
CLI_OVERRIDES = {
    "seed": "seed",
    "action_space": "action_space",
    "num_ues": "num_ues",
    "episodes": "episodes",
    "episode_ttis": "episode_ttis",
    "eval_episodes": "eval_episodes",
    "runs": "runs",
    "learning_rate": "learning_rate",
    "learning_rates": "tune_learning_rates",
    "discount_factors": "tune_discount_factors",
}


def config_from_args(args):
    """Config file named by --config (defaults otherwise) with the command-line overrides applied."""
    cfg = load_experiment_config(getattr(args, "config", None))
    overrides = {key: getattr(args, dest, None) for dest, key in CLI_OVERRIDES.items()}
    return cfg.replace(**overrides)
