from collections import deque
from dataclasses import dataclass, field
from enum import Enum

from . import config
from .errors import InvalidParameterError, InvariantViolation

# Header and CE overheads are not modelled; a CE occupies no payload bits.
CE_OVERHEAD_BITS = 0


class CeKind(Enum):
    LONG_DRX_COMMAND = "long_drx_command"
    SKIP_DURATION = "skip_duration"


@dataclass(frozen=True)
class MacCe:
    kind: CeKind
    duration_ttis: int = 0

    def __post_init__(self):
        if self.kind is CeKind.SKIP_DURATION and self.duration_ttis not in config.SKIP_DURATIONS_TTIS:
            raise InvalidParameterError(
                f"Skip duration must be one of {config.SKIP_DURATIONS_TTIS}, "
                f"got {self.duration_ttis}"
            )

    @classmethod
    def long_drx_command(cls):
        return cls(CeKind.LONG_DRX_COMMAND)

    @classmethod
    def skip(cls, duration_ttis):
        return cls(CeKind.SKIP_DURATION, duration_ttis)


@dataclass
class Sdu:
    id: int
    arrival_tti: int
    size_bits: int
    bits_remaining: int | None = None
    delivered_tti: int | None = None

    def __post_init__(self):
        if self.bits_remaining is None:
            self.bits_remaining = self.size_bits


@dataclass
class DlQueue:
    pending: deque = field(default_factory=deque)
    total_bits: int = 0

    def __len__(self):
        return len(self.pending)

    def head_age(self, t):
        """TTIs since the oldest queued SDU entered the queue (0 when empty)."""
        if not self.pending:
            return 0
        return t - self.pending[0].arrival_tti


@dataclass(frozen=True)
class TransportBlock:
    ue_id: int
    tti: int
    tbs_bits: int
    payload_segments: tuple
    ce: MacCe | None
    padding_bits: int

    @property
    def payload_bits(self):
        return sum(bits for _, bits in self.payload_segments)

    @property
    def has_payload(self):
        return bool(self.payload_segments)


def enqueue(queue, sdu):
    if sdu.size_bits <= 0:
        raise InvalidParameterError(f"SDU {sdu.id} has non-positive size {sdu.size_bits}")
    queue.pending.append(sdu)
    queue.total_bits += sdu.bits_remaining
    return queue


def assemble_tb(queue, tbs_bits, ce, tti, ue_id=0):
    """
    Fills a TB from the head of the FIFO queue without mutating it.

    SDUs are segmented across TBs when they do not fit; the space left once
    the queue is exhausted becomes padding. Queue bits are only removed when
    the TB is acknowledged (see process_feedback).
    """
    if tbs_bits < 0:
        raise InvalidParameterError(f"TB size cannot be negative, got {tbs_bits}")

    room = tbs_bits - (CE_OVERHEAD_BITS if ce is not None else 0)
    room = max(room, 0)
    segments = []
    for sdu in queue.pending:
        if room == 0:
            break
        take = min(sdu.bits_remaining, room)
        segments.append((sdu.id, take))
        room -= take

    return TransportBlock(
        ue_id=ue_id,
        tti=tti,
        tbs_bits=tbs_bits,
        payload_segments=tuple(segments),
        ce=ce,
        padding_bits=room,
    )


def process_feedback(queue, tb, delivered, tti):
    """
    Applies the HARQ feedback of a TB one TTI after its transmission.

    Returns:
        tuple: (
            DlQueue: the queue (mutated only on ACK),
            list: (sdu_id, delay_ttis) for every SDU completed by this TB,
            bool: whether the TB's CE took effect,
        )
    """
    if not delivered:
        return queue, [], False

    completed = []
    for sdu_id, bits in tb.payload_segments:
        if not queue.pending or queue.pending[0].id != sdu_id:
            head = queue.pending[0].id if queue.pending else None
            raise InvariantViolation(
                f"TTI {tti}: UE {tb.ue_id} TB segment for SDU {sdu_id} "
                f"does not match queue head {head}"
            )
        head = queue.pending[0]
        if bits > head.bits_remaining:
            raise InvariantViolation(
                f"TTI {tti}: UE {tb.ue_id} segment of {bits} bits exceeds "
                f"{head.bits_remaining} remaining in SDU {sdu_id}"
            )
        head.bits_remaining -= bits
        queue.total_bits -= bits
        if head.bits_remaining == 0:
            queue.pending.popleft()
            head.delivered_tti = tb.tti
            completed.append((head.id, tb.tti - head.arrival_tti))

    return queue, completed, tb.ce is not None
