from collections import deque
from dataclasses import dataclass, field

import numpy as np

from .. import drx, phy, seeding, traffic
from ..agent import FeatureNormalization, LastOutcome, SatisfactionWindow
from ..mac import DlQueue
from ..policies import PolicyKind
from ..scheduler import RrState


@dataclass
class OpenDecision:
    s: np.ndarray
    a: int
    reward: float = 0.0


@dataclass
class UeContext:
    ue_id: int
    arrivals: list
    channel: phy.ChannelState
    channel_rng: np.random.Generator
    drx_ue: drx.DrxState
    drx_bts: drx.DrxState
    satisfaction: SatisfactionWindow
    frames: deque
    queue: DlQueue = field(default_factory=DlQueue)
    next_arrival: int = 0
    next_sdu_id: int = 0
    last_outcome: LastOutcome = field(default_factory=LastOutcome)
    in_flight: tuple | None = None
    delays: list = field(default_factory=list)
    active_ttis: int = 0
    cum_reward: float = 0.0
    open_decision: OpenDecision | None = None
    w_trace: list | None = None


@dataclass
class World:
    cfg: object
    policy: PolicyKind
    action_space: int
    drx_config: drx.DrxConfig
    phy_params: phy.PhyParams
    ues: list
    policy_rng: np.random.Generator
    net: object = None
    agent: object = None
    normalization: FeatureNormalization = field(default_factory=FeatureNormalization)
    epsilon: float = 0.0
    training: bool = False
    rr: RrState = field(default_factory=RrState)
    action_histogram: list = field(default_factory=list)
    max_queue_bits: int = 0
    queue_cap_warned: bool = False
    ce_log: list | None = None
    t: int = 0


def build_world(
    cfg,
    policy,
    num_ues,
    episode,
    seed,
    phase=seeding.PHASE_EVAL,
    net=None,
    agent=None,
    normalization=None,
    epsilon=None,
    record_trace=False,
):
    """
    Creates the cell for one episode: UEs, their traffic, fading and DRX replicas.

    Traffic and channel streams depend only on (seed, phase, episode, UE), so
    every policy evaluated with the same seed sees the same arrivals and fading.

    Args:
        cfg (ExperimentConfig): Experiment settings.
        policy (PolicyKind): Policy driving the CE decisions.
        num_ues (int): Number of UEs in the cell.
        episode (int): Episode index.
        seed (int): Base seed of the run.
        phase (int): seeding.PHASE_TRAIN or seeding.PHASE_EVAL.
        net (QNetwork | None): Network used by the RL policy.
        agent (DqnAgent | None): Learning agent; enables training when given.
        normalization (FeatureNormalization | None): Feature scaling, from cfg when None.
        epsilon (float | None): Exploration rate; cfg.eval_epsilon when None.
        record_trace (bool): Keep the per-TTI W trace and the emitted-CE log.

    Returns:
        World: The initialised world at TTI 0.
    """
    if agent is not None and net is None:
        net = agent.net
    if policy is PolicyKind.RL and net is None:
        raise ValueError("The RL policy needs a Q-network or an agent.")

    drx_cfg = cfg.drx_config()
    phy_params = cfg.phy_params()
    traffic_params = cfg.traffic_params()
    horizon = max(cfg.episode_ttis - 1, 1)

    ues = []
    for ue_id in range(num_ues):
        traffic_rng = seeding.make_rng(seed, seeding.TRAFFIC, phase, episode, ue_id)
        channel_rng = seeding.make_rng(seed, seeding.CHANNEL, phase, episode, ue_id)
        start = drx.initial_state(drx_cfg, 0)
        ues.append(
            UeContext(
                ue_id=ue_id,
                arrivals=traffic.generate_arrivals(traffic_params, horizon, traffic_rng),
                channel=phy.init_channel(channel_rng),
                channel_rng=channel_rng,
                drx_ue=start,
                drx_bts=start,
                satisfaction=SatisfactionWindow(cfg.satisfaction_window, cfg.delta_ms),
                frames=deque(maxlen=cfg.history_size),
                w_trace=[] if record_trace else None,
            )
        )

    action_space = policy.action_space(cfg.action_space)
    return World(
        cfg=cfg,
        policy=policy,
        action_space=action_space,
        drx_config=drx_cfg,
        phy_params=phy_params,
        ues=ues,
        policy_rng=seeding.make_rng(seed, seeding.POLICY, phase, episode),
        net=net,
        agent=agent,
        normalization=normalization or cfg.feature_normalization(),
        epsilon=cfg.eval_epsilon if epsilon is None else epsilon,
        training=agent is not None,
        action_histogram=[0] * action_space,
        ce_log=[] if record_trace else None,
    )
