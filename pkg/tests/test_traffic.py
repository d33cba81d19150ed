import numpy as np
import pytest

from drxsim.errors import InvalidParameterError
from drxsim.traffic import XrTrafficParams, generate_arrivals, sample_truncated_gaussian


def test_zero_variance_returns_mean():
    rng = np.random.default_rng(0)
    assert sample_truncated_gaussian(5, 0, 0, 10, rng) == 5


def test_truncated_gaussian_packet_sizes():
    rng = np.random.default_rng(1)
    draws = sample_truncated_gaussian(1e6, 1.05e5, 5e5, 1.5e6, rng, size=100_000)
    assert abs(draws.mean() - 1e6) < 0.01 * 1e6
    assert draws.min() >= 5e5 and draws.max() <= 1.5e6


def test_truncated_gaussian_jitter_shrinks_std():
    rng = np.random.default_rng(2)
    draws = sample_truncated_gaussian(0, 2, -4, 4, rng, size=100_000)
    assert draws.min() >= -4 and draws.max() <= 4
    assert 1.7 <= draws.std() <= 2.0


def test_truncated_gaussian_rejects_inverted_interval():
    with pytest.raises(InvalidParameterError):
        sample_truncated_gaussian(0, 1, 1, -1, np.random.default_rng(0))


def test_arrivals_without_jitter_are_ceiled_frame_times():
    params = XrTrafficParams(jitter_std_ms=0.0, jitter_min_ms=0.0, jitter_max_ms=0.0)
    arrivals = generate_arrivals(params, 70, np.random.default_rng(3))
    assert [a.arrival_tti for a in arrivals] == [17, 34, 50, 67]


def test_frame_count_over_an_episode():
    arrivals = generate_arrivals(XrTrafficParams(), 8000, np.random.default_rng(4))
    assert abs(len(arrivals) - 8000 / 16.6) <= 3
    assert all(a.arrival_tti <= 8000 for a in arrivals)


def test_traffic_statistics_over_many_frames():
    horizon = 1_660_000
    arrivals = generate_arrivals(XrTrafficParams(), horizon, np.random.default_rng(5))
    sizes = np.array([a.size_bits for a in arrivals])
    ttis = np.array([a.arrival_tti for a in arrivals])

    assert len(arrivals) >= 99_000
    assert abs(sizes.mean() - 1e6) < 0.01 * 1e6
    assert sizes.min() >= 500_000 and sizes.max() <= 1_500_000
    assert abs(np.diff(ttis).mean() - 16.6) < 0.01 * 16.6
    rate_mbps = sizes.sum() / horizon / 1e3
    assert rate_mbps == pytest.approx(60.0, rel=0.02)


def test_invalid_traffic_parameters():
    with pytest.raises(InvalidParameterError):
        XrTrafficParams(size_min_frac=1.2)
    with pytest.raises(InvalidParameterError):
        XrTrafficParams(jitter_min_ms=3.0, jitter_max_ms=-3.0)
