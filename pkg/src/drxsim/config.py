import os

from scipy.constants import speed_of_light

# System settings
TTI_MS = 1
BANDWIDTH_MHZ = 100.0
BW_EFF_MHZ = 72.0
RHO = 0.99
CSI_PERIOD_MS = 10
SNR_DB = 10.0
LINK_ERROR_MODELS = ("outage", "ideal")
DEFAULT_LINK_ERROR_MODEL = "outage"
SPEED_OF_LIGHT_MPS = speed_of_light

# DRX timers
DRX_LONG_CYCLE_MS = 16
DRX_ON_DURATION_MS = 8
DRX_INACTIVITY_TIMER_MS = 8
DRX_CYCLE_OFFSET_MS = 0

# XR traffic
FRAME_INTERVAL_MS = 16.6
MEAN_PACKET_BITS = 1_000_000
SIZE_STD_FRAC = 0.105
SIZE_MIN_FRAC = 0.5
SIZE_MAX_FRAC = 1.5
JITTER_STD_MS = 2.0
JITTER_MIN_MS = -4.0
JITTER_MAX_MS = 4.0

# Cell population
MAX_UES = 9
UE_COUNT_WEIGHTS = (1.0, 1.0, 1.0, 1.0, 1.0, 1.0, 1.0, 2.5, 2.5)

# Reinforcement learning
ERM_SIZE = 100_000
BATCH_SIZE = 256
HIDDEN_NEURONS = 40
HISTORY_SIZE = 3
FEATURES_PER_FRAME = 12
OUTPUT_ACTIVATIONS = ("linear", "softmax")
DEFAULT_OUTPUT_ACTIVATION = "linear"
HUBER_DELTA = 1.0
TARGET_SYNC_STEPS = 100
TRAIN_EVERY_TTIS = 1
OPTIMIZERS = ("adam", "sgd")
DEFAULT_OPTIMIZER = "adam"
LEARNING_RATE = 1e-3
GAMMA = 1.0
EPSILON_START = 0.8
EPSILON_END = 1e-6
EPSILON_STEP_EPISODES = 30
EPSILON_DECAY_EPISODES = 300
EVAL_EPSILON = 1e-6
SATISFACTION_WINDOW = 20
BETA = 0.95
DELTA_MS = 20
EPISODE_TTIS = 8000
TRAIN_EPISODES = 750
EVAL_EPISODES = 250
TRAIN_RUNS = 30
ACTION_SPACES = (2, 7)
DEFAULT_ACTION_SPACE = 2
SKIP_DURATIONS_TTIS = (2, 4, 6, 8, 10, 12)

# Normalisation and guards
AGE_NORM_TTIS = 20
Q_SAT_BITS = 2_000_000
QUEUE_CAP_BITS = 50_000_000

# Tuning
TUNE_LEARNING_RATES = (1e-2, 1e-3, 1e-4, 1e-5)
TUNE_DISCOUNT_FACTORS = (0.9, 0.99, 1.0)
TUNE_RUNS = 8

DEFAULT_SEED = 0
LOG_EVERY_EPISODES = 10
MAX_WORKERS = os.cpu_count()

DEFAULT_LOG_FILENAME = "drxsim.log"
LEARNING_CURVE_FILENAME = "learning_curve.csv"
EVAL_FILENAME = "eval.csv"
ACTIONS_FILENAME = "actions.csv"
TUNING_FILENAME = "tuning.csv"
BEST_CHECKPOINT_FILENAME = "checkpoint_best.json"
FINAL_CHECKPOINT_FILENAME = "checkpoint_final.json"
RUN_DIR_TEMPLATE = "run_{:02d}"

POLICY_NAMES = ("always_on", "timers", "naive", "random", "rl")
