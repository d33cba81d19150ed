import numpy as np
import pytest

from drxsim.errors import EmptyMemoryError
from drxsim.replay_memory import ReplayMemory, Transition


def _transition(i, size=4):
    s = np.full(size, float(i))
    return Transition(s=s, a=i % 2, r=float(i), s_next=s + 1, terminal=False)


def test_fifo_eviction_at_capacity():
    memory = ReplayMemory(capacity=100, state_size=4)
    for i in range(101):
        memory.push(_transition(i))
    assert len(memory) == 100
    rewards = [tr.r for tr in memory.transitions()]
    assert rewards == [float(i) for i in range(1, 101)]


def test_transitions_round_trip():
    memory = ReplayMemory(capacity=10, state_size=4)
    memory.push(Transition(np.arange(4.0), 1, -0.5, np.zeros(4), True))
    (tr,) = list(memory.transitions())
    assert np.array_equal(tr.s, np.arange(4.0))
    assert (tr.a, tr.r, tr.terminal) == (1, -0.5, True)


def test_sampling_covers_memory():
    memory = ReplayMemory(capacity=5000, state_size=4)
    for i in range(1000):
        memory.push(_transition(i))
    idx = memory.sample_indices(100_000, np.random.default_rng(0))
    assert idx.max() < 1000
    assert len(np.unique(idx)) >= 990


def test_sample_shapes():
    memory = ReplayMemory(capacity=50, state_size=4)
    for i in range(10):
        memory.push(_transition(i))
    s, a, r, s_next, terminal = memory.sample(8, np.random.default_rng(1))
    assert s.shape == (8, 4) and s_next.shape == (8, 4)
    assert a.shape == r.shape == terminal.shape == (8,)


def test_empty_memory_cannot_be_sampled():
    with pytest.raises(EmptyMemoryError):
        ReplayMemory(capacity=10, state_size=4).sample(1, np.random.default_rng(0))
