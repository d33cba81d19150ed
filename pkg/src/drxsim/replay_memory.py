from dataclasses import dataclass

import numpy as np

from . import config
from .errors import EmptyMemoryError, InvalidParameterError


@dataclass(frozen=True)
class Transition:
    s: np.ndarray
    a: int
    r: float
    s_next: np.ndarray
    terminal: bool


class ReplayMemory:
    """Fixed-capacity ring buffer of transitions; the oldest entry is overwritten first."""

    def __init__(self, capacity=config.ERM_SIZE, state_size=config.FEATURES_PER_FRAME * config.HISTORY_SIZE):
        if capacity < 1:
            raise InvalidParameterError(f"ERM capacity must be >= 1, got {capacity}")
        self.capacity = int(capacity)
        self.state_size = int(state_size)
        self.states = np.zeros((self.capacity, self.state_size))
        self.next_states = np.zeros((self.capacity, self.state_size))
        self.actions = np.zeros(self.capacity, dtype=np.int64)
        self.rewards = np.zeros(self.capacity)
        self.terminal = np.zeros(self.capacity, dtype=bool)
        self._next_slot = 0
        self._size = 0

    def __len__(self):
        return self._size

    def push(self, tr):
        slot = self._next_slot
        self.states[slot] = tr.s
        self.actions[slot] = tr.a
        self.rewards[slot] = tr.r
        self.next_states[slot] = tr.s_next
        self.terminal[slot] = tr.terminal
        self._next_slot = (slot + 1) % self.capacity
        self._size = min(self._size + 1, self.capacity)

    def _ordered_slots(self):
        if self._size < self.capacity:
            return np.arange(self._size)
        return (np.arange(self.capacity) + self._next_slot) % self.capacity

    def transitions(self):
        """Yields the stored transitions from oldest to newest."""
        for slot in self._ordered_slots():
            yield Transition(
                s=self.states[slot].copy(),
                a=int(self.actions[slot]),
                r=float(self.rewards[slot]),
                s_next=self.next_states[slot].copy(),
                terminal=bool(self.terminal[slot]),
            )

    def sample_indices(self, n, rng):
        if self._size == 0:
            raise EmptyMemoryError("Cannot sample from an empty replay memory.")
        return rng.integers(0, self._size, size=n)

    def sample(self, n, rng):
        """
        Uniform minibatch, with replacement, over the current contents.

        Returns:
            tuple: (states, actions, rewards, next_states, terminal) arrays.
        """
        idx = self.sample_indices(n, rng)
        return (
            self.states[idx],
            self.actions[idx],
            self.rewards[idx],
            self.next_states[idx],
            self.terminal[idx],
        )
