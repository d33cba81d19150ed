import pytest

from drxsim.drx import (
    DrxConfig,
    DrxMode,
    DrxState,
    apply_ce,
    drx_tick,
    initial_state,
    remaining_in_state,
    time_until_next_cycle,
)
from drxsim.errors import InvalidParameterError
from drxsim.mac import MacCe

CFG = DrxConfig()


def _w_trace(state, start, stop, notified=lambda t: False):
    trace = []
    for t in range(start, stop):
        trace.append(state.W)
        state = drx_tick(state, CFG, t, notified(t))
    return trace


def test_idle_pattern_is_half_on():
    trace = _w_trace(initial_state(CFG), 0, 160)
    assert trace[:16] == [1] * 8 + [0] * 8
    assert trace == trace[:16] * 10
    assert sum(trace) / len(trace) == 0.5


def test_constant_grants_keep_ue_awake():
    trace = _w_trace(initial_state(CFG), 0, 200, notified=lambda t: True)
    assert trace == [1] * 200


def test_inactivity_expiry_sleeps_until_next_cycle():
    state = DrxState(DrxMode.INACTIVITY_EXTENDED, inactivity_remaining=1)
    state = drx_tick(state, CFG, 5, False)
    trace = _w_trace(state, 6, 17)
    assert trace == [0] * 10 + [1]


def test_long_drx_command_sleeps_until_next_cycle():
    state = apply_ce(DrxState(DrxMode.ON_DURATION, on_duration_remaining=5), CFG, MacCe.long_drx_command(), 3)
    trace = _w_trace(state, 4, 17)
    assert trace == [0] * 12 + [1]


def test_long_drx_command_before_cycle_start_wakes_next_tti():
    state = apply_ce(DrxState(DrxMode.INACTIVITY_EXTENDED, inactivity_remaining=3), CFG, MacCe.long_drx_command(), 15)
    assert state.mode is DrxMode.ON_DURATION
    assert state.on_duration_remaining == CFG.on_duration_ttis


def test_skip_duration_then_listen():
    state = apply_ce(DrxState(DrxMode.ON_DURATION, on_duration_remaining=6), CFG, MacCe.skip(2), 1)
    trace = _w_trace(state, 2, 5)
    assert trace == [0, 0, 1]


def test_time_until_next_cycle():
    assert time_until_next_cycle(0, CFG) == 16
    assert time_until_next_cycle(15, CFG) == 1
    assert time_until_next_cycle(16, CFG) == 16
    assert time_until_next_cycle(2, DrxConfig(cycle_offset_ttis=4)) == 2


def test_remaining_in_state():
    assert remaining_in_state(DrxState(DrxMode.INACTIVITY_EXTENDED, inactivity_remaining=5), CFG, 3) == 5
    assert remaining_in_state(DrxState(DrxMode.SLEEP), CFG, 10) == 6
    assert remaining_in_state(DrxState(DrxMode.SKIP, skip_remaining=4), CFG, 0) == 4


def test_initial_state_off_cycle_sleeps():
    assert initial_state(DrxConfig(cycle_offset_ttis=3), 0).mode is DrxMode.SLEEP


def test_invalid_timers():
    with pytest.raises(InvalidParameterError):
        DrxConfig(on_duration_ttis=20)
    with pytest.raises(InvalidParameterError):
        DrxConfig(inactivity_timer_ttis=0)
