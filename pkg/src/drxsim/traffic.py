import logging
import math
from dataclasses import dataclass

import numpy as np

from . import config
from .errors import InvalidParameterError


@dataclass(frozen=True)
class XrTrafficParams:
    """Quasi-periodic XR downlink source: one frame (SDU) per video frame."""

    frame_interval_ms: float = config.FRAME_INTERVAL_MS
    mean_packet_bits: int = config.MEAN_PACKET_BITS
    size_std_frac: float = config.SIZE_STD_FRAC
    size_min_frac: float = config.SIZE_MIN_FRAC
    size_max_frac: float = config.SIZE_MAX_FRAC
    jitter_std_ms: float = config.JITTER_STD_MS
    jitter_min_ms: float = config.JITTER_MIN_MS
    jitter_max_ms: float = config.JITTER_MAX_MS

    def __post_init__(self):
        if self.frame_interval_ms <= 0:
            raise InvalidParameterError(
                f"frame_interval_ms must be positive, got {self.frame_interval_ms}"
            )
        if self.mean_packet_bits <= 0:
            raise InvalidParameterError(
                f"mean_packet_bits must be positive, got {self.mean_packet_bits}"
            )
        if not self.size_min_frac < 1 < self.size_max_frac:
            raise InvalidParameterError(
                f"Size bounds must satisfy min < 1 < max, got "
                f"[{self.size_min_frac}, {self.size_max_frac}]"
            )
        if self.jitter_min_ms > self.jitter_max_ms:
            raise InvalidParameterError(
                f"Jitter bounds inverted: [{self.jitter_min_ms}, {self.jitter_max_ms}]"
            )
        if self.size_std_frac < 0 or self.jitter_std_ms < 0:
            raise InvalidParameterError("Standard deviations cannot be negative.")

    @property
    def size_bounds_bits(self):
        return (
            self.size_min_frac * self.mean_packet_bits,
            self.size_max_frac * self.mean_packet_bits,
        )


@dataclass(frozen=True)
class SduArrival:
    arrival_tti: int
    size_bits: int


def sample_truncated_gaussian(mean, std, lo, hi, rng, size=None):
    """
    Draws from Gaussian(mean, std) conditioned on [lo, hi] by rejection.

    Args:
        mean (float): Mean of the untruncated Gaussian.
        std (float): Standard deviation of the untruncated Gaussian.
        lo (float): Lower bound (inclusive).
        hi (float): Upper bound (inclusive).
        rng (numpy.random.Generator): Random stream.
        size (int | None): Number of draws; None returns a single float.

    Returns:
        float | numpy.ndarray: The draw(s), all inside [lo, hi].
    """
    if lo > hi:
        raise InvalidParameterError(f"Invalid interval: lo={lo} > hi={hi}")
    if std < 0:
        raise InvalidParameterError(f"Standard deviation cannot be negative: {std}")

    count = 1 if size is None else int(size)
    if std == 0 or lo == hi:
        samples = np.full(count, min(max(mean, lo), hi), dtype=float)
    else:
        samples = np.empty(count, dtype=float)
        filled = 0
        while filled < count:
            draws = rng.normal(mean, std, size=count - filled)
            accepted = draws[(draws >= lo) & (draws <= hi)]
            samples[filled : filled + accepted.size] = accepted
            filled += accepted.size

    if size is None:
        return float(samples[0])
    return samples


def generate_arrivals(params, horizon_ttis, rng):
    """
    Generates the SDU arrivals of one UE over a horizon of TTIs (1 TTI = 1 ms).

    Frame n (n >= 1) exists at n * frame_interval + jitter_n and becomes
    schedulable at the ceiling of that time. Frames landing after the horizon
    are dropped.

    Returns:
        list[SduArrival]: Arrivals sorted by TTI.
    """
    if horizon_ttis < 1:
        raise InvalidParameterError(f"horizon_ttis must be >= 1, got {horizon_ttis}")

    num_frames = int(
        math.floor((horizon_ttis + max(0.0, -params.jitter_min_ms)) / params.frame_interval_ms)
    ) + 1
    frame_index = np.arange(1, num_frames + 1, dtype=float)

    jitter = sample_truncated_gaussian(
        0.0,
        params.jitter_std_ms,
        params.jitter_min_ms,
        params.jitter_max_ms,
        rng,
        size=num_frames,
    )
    lo_bits, hi_bits = params.size_bounds_bits
    sizes = sample_truncated_gaussian(
        float(params.mean_packet_bits),
        params.size_std_frac * params.mean_packet_bits,
        lo_bits,
        hi_bits,
        rng,
        size=num_frames,
    )

    # n * 16.6 is not exact in binary floating point; round before the ceiling.
    nominal_ms = np.round(frame_index * params.frame_interval_ms + jitter, 9)
    arrival_ttis = np.ceil(nominal_ms).astype(np.int64)
    size_bits = np.clip(np.rint(sizes), math.ceil(lo_bits), math.floor(hi_bits)).astype(
        np.int64
    )

    keep = arrival_ttis <= horizon_ttis
    arrivals = [
        SduArrival(arrival_tti=int(tti), size_bits=int(bits))
        for tti, bits in zip(arrival_ttis[keep], size_bits[keep])
    ]
    logging.debug(
        f"Generated {len(arrivals)} XR frames over {horizon_ttis} TTIs "
        f"({num_frames - len(arrivals)} beyond the horizon)."
    )
    return arrivals
