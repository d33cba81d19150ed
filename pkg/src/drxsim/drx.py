"""
Per-UE DRX state machine.

The BTS keeps a replica of every UE's machine and advances it with the same
rules, so it always knows which UEs are listening. A state describes the TTI
it is valid for; drx_tick and apply_ce both return the state of the next TTI.
"""

from dataclasses import dataclass, replace
from enum import Enum

from . import config
from .errors import InvalidParameterError
from .mac import CeKind


class DrxMode(Enum):
    ON_DURATION = "on_duration"
    INACTIVITY_EXTENDED = "inactivity_extended"
    SLEEP = "sleep"
    SKIP = "skip"


LISTENING_MODES = (DrxMode.ON_DURATION, DrxMode.INACTIVITY_EXTENDED)


@dataclass(frozen=True)
class DrxConfig:
    long_cycle_ttis: int = config.DRX_LONG_CYCLE_MS
    on_duration_ttis: int = config.DRX_ON_DURATION_MS
    inactivity_timer_ttis: int = config.DRX_INACTIVITY_TIMER_MS
    cycle_offset_ttis: int = config.DRX_CYCLE_OFFSET_MS

    def __post_init__(self):
        if min(self.long_cycle_ttis, self.on_duration_ttis, self.inactivity_timer_ttis) < 1:
            raise InvalidParameterError("DRX timers must be at least 1 TTI.")
        if self.on_duration_ttis > self.long_cycle_ttis:
            raise InvalidParameterError(
                f"onDuration ({self.on_duration_ttis}) exceeds the long cycle "
                f"({self.long_cycle_ttis})"
            )
        if self.cycle_offset_ttis < 0:
            raise InvalidParameterError("DRX cycle offset cannot be negative.")

    def is_cycle_start(self, t):
        return (t - self.cycle_offset_ttis) % self.long_cycle_ttis == 0


@dataclass(frozen=True)
class DrxState:
    mode: DrxMode
    on_duration_remaining: int = 0
    inactivity_remaining: int = 0
    skip_remaining: int = 0

    @property
    def listening(self):
        return self.mode in LISTENING_MODES

    @property
    def W(self):
        return int(self.listening)


def initial_state(cfg, t=0):
    """State at TTI t for a UE that has not received anything yet."""
    if cfg.is_cycle_start(t):
        return DrxState(DrxMode.ON_DURATION, on_duration_remaining=cfg.on_duration_ttis)
    return DrxState(DrxMode.SLEEP)


def _wake_at_cycle_start(state, cfg, t_next):
    if state.mode is DrxMode.SLEEP and cfg.is_cycle_start(t_next):
        return DrxState(DrxMode.ON_DURATION, on_duration_remaining=cfg.on_duration_ttis)
    return state


def drx_tick(state, cfg, t, data_notified):
    """
    Advances the machine at the end of TTI t.

    Args:
        state (DrxState): State during TTI t.
        cfg (DrxConfig): Timer configuration.
        t (int): Current TTI.
        data_notified (bool): The UE decoded a PDCCH grant during TTI t.

    Returns:
        DrxState: State during TTI t + 1.
    """
    if data_notified:
        state = DrxState(
            DrxMode.INACTIVITY_EXTENDED,
            inactivity_remaining=cfg.inactivity_timer_ttis,
        )
    elif state.mode is DrxMode.ON_DURATION:
        remaining = state.on_duration_remaining - 1
        state = (
            replace(state, on_duration_remaining=remaining)
            if remaining > 0
            else DrxState(DrxMode.SLEEP)
        )
    elif state.mode is DrxMode.INACTIVITY_EXTENDED:
        remaining = state.inactivity_remaining - 1
        state = (
            replace(state, inactivity_remaining=remaining)
            if remaining > 0
            else DrxState(DrxMode.SLEEP)
        )
    elif state.mode is DrxMode.SKIP:
        remaining = state.skip_remaining - 1
        state = (
            replace(state, skip_remaining=remaining)
            if remaining > 0
            else DrxState(
                DrxMode.INACTIVITY_EXTENDED,
                inactivity_remaining=cfg.inactivity_timer_ttis,
            )
        )

    return _wake_at_cycle_start(state, cfg, t + 1)


def apply_ce(state, cfg, ce, t):
    """
    Applies a successfully decoded CE carried by the TB of TTI t.

    Returns:
        DrxState: State during TTI t + 1.
    """
    if ce.kind is CeKind.LONG_DRX_COMMAND:
        return _wake_at_cycle_start(DrxState(DrxMode.SLEEP), cfg, t + 1)
    if ce.kind is CeKind.SKIP_DURATION:
        return DrxState(DrxMode.SKIP, skip_remaining=ce.duration_ttis)
    raise InvalidParameterError(f"Unsupported CE kind: {ce.kind}")


def time_until_next_cycle(t, cfg):
    phase = (t - cfg.cycle_offset_ttis) % cfg.long_cycle_ttis
    return cfg.long_cycle_ttis - phase


def remaining_in_state(state, cfg, t):
    """TTIs until the timer-driven machine would change state on its own."""
    if state.mode is DrxMode.ON_DURATION:
        return state.on_duration_remaining
    if state.mode is DrxMode.INACTIVITY_EXTENDED:
        return state.inactivity_remaining
    if state.mode is DrxMode.SKIP:
        return state.skip_remaining
    return time_until_next_cycle(t, cfg)
