import math
from dataclasses import dataclass, replace

import numpy as np
from scipy.signal import lfilter
from scipy.special import j0

from . import config
from .errors import InvalidParameterError


@dataclass(frozen=True)
class PhyParams:
    rho: float = config.RHO
    snr_linear: float = 10.0 ** (config.SNR_DB / 10.0)
    bw_eff_hz: float = config.BW_EFF_MHZ * 1e6
    tti_s: float = config.TTI_MS * 1e-3
    csi_period_ttis: int = config.CSI_PERIOD_MS
    link_error_model: str = config.DEFAULT_LINK_ERROR_MODEL

    def __post_init__(self):
        if not 0 < self.rho < 1:
            raise InvalidParameterError(f"rho must lie in (0, 1), got {self.rho}")
        if self.snr_linear <= 0:
            raise InvalidParameterError(f"snr_linear must be positive, got {self.snr_linear}")
        if self.csi_period_ttis < 1:
            raise InvalidParameterError(
                f"csi_period_ttis must be >= 1, got {self.csi_period_ttis}"
            )
        if self.link_error_model not in config.LINK_ERROR_MODELS:
            raise InvalidParameterError(
                f"Unknown link error model '{self.link_error_model}'"
            )

    @property
    def bits_per_tti_per_hz(self):
        return self.bw_eff_hz * self.tti_s


@dataclass(frozen=True)
class ChannelState:
    h: complex
    h_reported: complex
    last_report_tti: int


def rho_from_doppler(carrier_hz, velocity_mps, tti_s):
    """Lag-one fading correlation J0(2 pi f_D T) for a Jakes spectrum."""
    doppler_hz = carrier_hz * abs(velocity_mps) / config.SPEED_OF_LIGHT_MPS
    return float(j0(2.0 * math.pi * doppler_hz * tti_s))


def _complex_gaussian(rng, size=None):
    if size is None:
        re, im = rng.standard_normal(2)
        return complex(re, im) / math.sqrt(2.0)
    draws = rng.standard_normal((size, 2))
    return (draws[:, 0] + 1j * draws[:, 1]) / math.sqrt(2.0)


def init_channel(rng):
    """Draws h(0) ~ CN(0, 1). The first report is a genie report of h(0)."""
    h = _complex_gaussian(rng)
    return ChannelState(h=h, h_reported=h, last_report_tti=0)


def step_channel(state, rho, rng):
    """Advances the AR(1) fading process by one TTI."""
    w = _complex_gaussian(rng)
    h = rho * state.h + math.sqrt(max(0.0, 1.0 - rho * rho)) * w
    return replace(state, h=h)


def fading_trace(h0, rho, n_steps, rng):
    """
    Vectorised AR(1) trace h(1..n_steps) starting from h0.

    Returns:
        numpy.ndarray: Complex array of length n_steps.
    """
    w = _complex_gaussian(rng, size=n_steps)
    gain = math.sqrt(max(0.0, 1.0 - rho * rho))
    trace, _ = lfilter([gain], [1.0, -rho], w, zi=np.array([rho * h0], dtype=complex))
    return trace


def csi_report_due(t, period, ue_active):
    if period < 1:
        raise InvalidParameterError(f"CSI period must be >= 1, got {period}")
    return t % period == 0 and bool(ue_active)


def collect_csi_report(state, t, period, ue_active):
    """
    Applies the periodic CSI report of TTI t, skipped while the UE sleeps.

    Returns:
        tuple: (ChannelState, bool) - the updated state and whether a report was made.
    """
    if not csi_report_due(t, period, ue_active):
        return state, False
    return replace(state, h_reported=state.h, last_report_tti=t), True


def capacity_bits(h, p):
    return p.bits_per_tti_per_hz * math.log2(1.0 + p.snr_linear * abs(h) ** 2)


def select_tbs(h_reported, p):
    if h_reported == 0:
        return 0
    return int(math.floor(capacity_bits(h_reported, p)))


def tb_outcome(h_actual, tbs_bits, p):
    """Outage rule: a TB fails iff the instantaneous capacity is below its size."""
    if tbs_bits == 0 or p.link_error_model == "ideal":
        return True
    return capacity_bits(h_actual, p) >= tbs_bits
