import logging
import math
from collections import deque
from dataclasses import dataclass

import numpy as np

from . import config, drx
from .errors import InvalidParameterError, TrainingDivergedError
from .mac import MacCe
from .qnetwork import QNetwork, make_optimizer
from .replay_memory import ReplayMemory

NULL_ACTION = 0
NUM_RESOURCE_USAGE = 4


@dataclass(frozen=True)
class LastOutcome:
    """What happened to a UE's downlink in the previous TTI, as known from HARQ feedback."""

    scheduled: bool = False
    delivered: bool = False
    had_payload: bool = False

    @property
    def ack(self):
        return int(self.scheduled and self.delivered)

    @property
    def resource_usage(self):
        if not self.scheduled:
            return 3
        if not self.delivered:
            return 2
        return 0 if self.had_payload else 1


@dataclass(frozen=True)
class CellContext:
    n_active_ues: int
    total_queue_bits: int
    drx_config: drx.DrxConfig


@dataclass(frozen=True)
class StateFeatures:
    ack: int = 0
    scheduled: int = 0
    ttnc: int = 0
    age: int = 0
    queue_bits: int = 0
    remaining_state: int = 0
    resource_usage: int = 0
    n_active_ues: int = 0
    total_queue_bits: int = 0


@dataclass(frozen=True)
class FeatureNormalization:
    ttnc_ttis: int = config.DRX_LONG_CYCLE_MS
    age_ttis: int = config.AGE_NORM_TTIS
    q_sat_bits: int = config.Q_SAT_BITS
    remaining_ttis: int = config.DRX_LONG_CYCLE_MS
    max_ues: int = config.MAX_UES

    def to_dict(self):
        return {
            "ttnc_ttis": self.ttnc_ttis,
            "age_ttis": self.age_ttis,
            "q_sat_bits": self.q_sat_bits,
            "remaining_ttis": self.remaining_ttis,
            "max_ues": self.max_ues,
        }


def build_features(ue_ctx, cell_ctx, t):
    """
    State features of one active UE at the policy-execution point of TTI t.

    ue_ctx must expose `last_outcome` (LastOutcome of TTI t-1), `queue`
    (DlQueue) and `drx_bts` (the BTS replica of the UE's DrxState).
    """
    outcome = ue_ctx.last_outcome
    cfg = cell_ctx.drx_config
    return StateFeatures(
        ack=outcome.ack,
        scheduled=int(outcome.scheduled),
        ttnc=drx.time_until_next_cycle(t, cfg),
        age=ue_ctx.queue.head_age(t),
        queue_bits=ue_ctx.queue.total_bits,
        remaining_state=drx.remaining_in_state(ue_ctx.drx_bts, cfg, t),
        resource_usage=outcome.resource_usage,
        n_active_ues=cell_ctx.n_active_ues,
        total_queue_bits=cell_ctx.total_queue_bits,
    )


def _unit(value):
    return min(max(float(value), 0.0), 1.0)


def encode_frame(f, norm):
    one_hot = [0.0] * NUM_RESOURCE_USAGE
    one_hot[f.resource_usage] = 1.0
    return [
        _unit(f.ack),
        _unit(f.scheduled),
        _unit(f.ttnc / norm.ttnc_ttis),
        _unit(f.age / norm.age_ttis),
        _unit(f.queue_bits / norm.q_sat_bits),
        _unit(f.remaining_state / norm.remaining_ttis),
        *one_hot,
        _unit(f.n_active_ues / norm.max_ues),
        _unit(f.total_queue_bits / (norm.max_ues * norm.q_sat_bits)),
    ]


def encode(frames, norm=FeatureNormalization(), history_size=config.HISTORY_SIZE):
    """Concatenates the most recent frames, oldest first, zero-filling missing history."""
    frames = list(frames)[-history_size:]
    padded = [StateFeatures()] * (history_size - len(frames)) + frames
    x = []
    for f in padded:
        x.extend(encode_frame(f, norm))
    return np.array(x, dtype=float)


class SatisfactionWindow:
    """Delays of the N most recently delivered SDUs and the share meeting the budget."""

    def __init__(self, size=config.SATISFACTION_WINDOW, delta=config.DELTA_MS):
        self.delta = delta
        self.delays = deque(maxlen=size)
        self._violations = 0

    def push(self, delay):
        if len(self.delays) == self.delays.maxlen and self.delays[0] > self.delta:
            self._violations -= 1
        self.delays.append(delay)
        if delay > self.delta:
            self._violations += 1

    def value(self):
        if not self.delays:
            return 1.0
        return 1.0 - self._violations / len(self.delays)


def satisfaction(window, delta):
    window = list(window)
    if not window:
        return 1.0
    return sum(1 for d in window if d <= delta) / len(window)


def reward(sigma, beta, W):
    if sigma < beta:
        return sigma - beta
    return 1.0 - W


def select_action(q, epsilon, rng, ue_active):
    if not ue_active:
        return NULL_ACTION
    if epsilon > 0 and rng.random() < epsilon:
        return int(rng.integers(len(q)))
    return int(np.argmax(q))


def epsilon_schedule(
    episode,
    start=config.EPSILON_START,
    end=config.EPSILON_END,
    step_episodes=config.EPSILON_STEP_EPISODES,
    decay_episodes=config.EPSILON_DECAY_EPISODES,
):
    """Piecewise-constant exponential decay from start to end, one step every step_episodes."""
    if episode < 0:
        raise InvalidParameterError(f"Episode index cannot be negative: {episode}")
    if episode >= decay_episodes:
        return end
    num_steps = decay_episodes / step_episodes
    k = (end / start) ** (1.0 / num_steps)
    return start * k ** (episode // step_episodes)


def action_to_ce(action, action_space):
    """Maps an action index to the CE it sends (None for the null action)."""
    if action == NULL_ACTION:
        return None
    if action_space == 2 and action == 1:
        return MacCe.long_drx_command()
    if action_space == 7 and 1 <= action <= len(config.SKIP_DURATIONS_TTIS):
        return MacCe.skip(config.SKIP_DURATIONS_TTIS[action - 1])
    raise InvalidParameterError(f"Action {action} outside an action space of size {action_space}")


def action_label(action, action_space):
    """Sleep duration in ms for reporting; 'long_drx' for the legacy command."""
    if action == NULL_ACTION:
        return 0
    if action_space == 2:
        return "long_drx"
    return config.SKIP_DURATIONS_TTIS[action - 1]


def train_step(memory, net, target_net, optimizer, batch_size, gamma, rng, huber_delta=config.HUBER_DELTA):
    """
    One minibatch update of the online network on the TD targets of the target network.

    Returns:
        float | None: The loss, or None when the memory holds fewer than batch_size transitions.
    """
    if len(memory) < batch_size:
        return None
    s, a, r, s_next, terminal = memory.sample(batch_size, rng)
    q_next = target_net.forward(s_next).max(axis=1)
    targets = r + gamma * np.where(terminal, 0.0, q_next)
    loss, grads = net.loss_and_gradients(s, a, targets, delta=huber_delta)
    optimizer.step(net.params, grads)
    return loss


class DqnAgent:
    """A single DQN shared by all UEs of the cell."""

    def __init__(
        self,
        num_actions=config.DEFAULT_ACTION_SPACE,
        history_size=config.HISTORY_SIZE,
        hidden_size=config.HIDDEN_NEURONS,
        output_activation=config.DEFAULT_OUTPUT_ACTIVATION,
        optimizer=config.DEFAULT_OPTIMIZER,
        learning_rate=config.LEARNING_RATE,
        gamma=config.GAMMA,
        batch_size=config.BATCH_SIZE,
        erm_size=config.ERM_SIZE,
        target_sync_steps=config.TARGET_SYNC_STEPS,
        huber_delta=config.HUBER_DELTA,
        normalization=FeatureNormalization(),
        rng=None,
    ):
        if num_actions not in config.ACTION_SPACES:
            raise InvalidParameterError(f"Action space must be one of {config.ACTION_SPACES}")
        self.rng = rng if rng is not None else np.random.default_rng()
        self.num_actions = num_actions
        self.history_size = history_size
        self.input_size = config.FEATURES_PER_FRAME * history_size
        self.gamma = gamma
        self.batch_size = batch_size
        self.target_sync_steps = target_sync_steps
        self.huber_delta = huber_delta
        self.normalization = normalization

        self.net = QNetwork(
            self.input_size, hidden_size, num_actions, output_activation=output_activation, rng=self.rng
        )
        self.target_net = self.net.copy()
        self.optimizer = make_optimizer(optimizer, learning_rate)
        self.memory = ReplayMemory(erm_size, self.input_size)
        self.train_steps = 0
        self.last_loss = math.nan

    @classmethod
    def from_config(cls, cfg, rng):
        return cls(
            num_actions=cfg.action_space,
            history_size=cfg.history_size,
            hidden_size=cfg.hidden_neurons,
            output_activation=cfg.output_activation,
            optimizer=cfg.optimizer,
            learning_rate=cfg.learning_rate,
            gamma=cfg.gamma,
            batch_size=cfg.batch_size,
            erm_size=cfg.erm_size,
            target_sync_steps=cfg.target_sync_steps,
            huber_delta=cfg.huber_delta,
            normalization=cfg.feature_normalization(),
            rng=rng,
        )

    def q_values(self, x):
        return self.net.forward(x)

    def remember(self, tr):
        self.memory.push(tr)

    def sync_target(self):
        self.target_net.load_params(self.net.params)

    def train_step(self):
        loss = train_step(
            self.memory,
            self.net,
            self.target_net,
            self.optimizer,
            self.batch_size,
            self.gamma,
            self.rng,
            huber_delta=self.huber_delta,
        )
        if loss is None:
            return None
        if not math.isfinite(loss) or not self.net.all_finite():
            raise TrainingDivergedError(
                f"Non-finite loss {loss} after {self.train_steps} train steps "
                f"(ERM size {len(self.memory)})"
            )
        self.train_steps += 1
        self.last_loss = loss
        if self.train_steps % self.target_sync_steps == 0:
            self.sync_target()
            logging.debug(f"Target network synchronised at train step {self.train_steps} (loss {loss:.4g}).")
        return loss
