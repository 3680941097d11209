"""Tests for channel and measurement extremization."""

import math

import pytest

from negshannon.config import FAST_OPTIMIZER, OptimizerConfig
from negshannon.models import (
    ConfigError,
    Direction,
    DistributionError,
    MeasurementError,
    UnsupportedFamilyError,
)
from negshannon.optimize import (
    T_CHANNEL,
    channel_information,
    delta_indicator,
    extremize_under_local_channels,
    i_min_network,
    t_channel_information,
)
from negshannon.probtab import ghz_type, w_type
from negshannon.quantum import product_state, random_pure_state, star_network, tripartite_network
from negshannon.shannon import mutual_information, tripartite_information

HALF = math.sqrt(0.5)


@pytest.fixture
def cfg():
    """Small optimizer settings for fast tests."""
    return OptimizerConfig(restarts=2, max_iterations=150, grid_resolution=9)


# =============================================================================
# Local channels
# =============================================================================


def test_channel_information_identity(w_symmetric):
    """Test that zero angles leave I(X;Y;Z) unchanged."""
    assert channel_information(w_symmetric, [0.0, 0.0, 0.0]) == pytest.approx(
        tripartite_information(w_symmetric)
    )


def test_channel_information_uniformizing_angle(w_symmetric):
    """Test that a pi/4 channel on one variable kills the information."""
    value = channel_information(w_symmetric, [math.pi / 4, 0.0, 0.0])
    assert value == pytest.approx(0.0, abs=1e-12)


def test_max_is_bounded(cfg):
    """Test 0 <= I1 <= min pairwise information on W-type inputs."""
    for a, b in [(0.2, 0.3), (1 / 3, 1 / 3), (0.6, 0.1)]:
        P = w_type(a, b)
        result = extremize_under_local_channels(P, "max", cfg)
        ceiling = min(
            mutual_information(P, "X", "Y"),
            mutual_information(P, "X", "Z"),
            mutual_information(P, "Y", "Z"),
        )
        assert -1e-9 <= result.value <= ceiling + 1e-9
        assert result.direction is Direction.MAX


def test_min_stays_at_identity(w_symmetric):
    """Test that channels cannot make symmetric W more negative."""
    i_w = tripartite_information(w_symmetric)
    result = extremize_under_local_channels(w_symmetric, Direction.MIN, FAST_OPTIMIZER)
    assert result.value <= i_w + 1e-9
    assert result.value == pytest.approx(i_w, abs=1e-3)


def test_result_shape(cfg, w_symmetric):
    """Test the trace length, angle bounds and value consistency."""
    result = extremize_under_local_channels(w_symmetric, "min", cfg)
    assert len(result.trace) == cfg.restarts
    assert len(result.argument) == 3
    assert all(0.0 <= g <= math.pi / 2 for g in result.argument)
    assert result.value == pytest.approx(channel_information(w_symmetric, result.argument))
    assert result.value <= min(result.trace) + 1e-12


def test_channel_search_is_deterministic(cfg):
    """Test that repeated runs agree exactly."""
    P = w_type(0.2, 0.5)
    first = extremize_under_local_channels(P, "max", cfg)
    second = extremize_under_local_channels(P, "max", cfg)
    assert first == second


def test_more_restarts_never_hurt():
    """Test that the minimum does not increase with the restart count."""
    P = w_type(0.15, 0.35)
    values = [
        extremize_under_local_channels(
            P, "min", OptimizerConfig(restarts=r, max_iterations=150, grid_resolution=9)
        ).value
        for r in (1, 3)
    ]
    assert values[1] <= values[0] + 1e-12


def test_workers_give_identical_results(cfg):
    """Test that the thread pool keeps start order."""
    P = w_type(0.25, 0.25)
    serial = extremize_under_local_channels(P, "min", cfg)
    threaded = extremize_under_local_channels(
        P, "min", OptimizerConfig(restarts=2, max_iterations=150, grid_resolution=9, workers=2)
    )
    assert serial.value == threaded.value
    assert serial.argument == threaded.argument


def test_channel_search_needs_bits(eq14):
    """Test that non-binary inputs raise."""
    with pytest.raises(DistributionError):
        extremize_under_local_channels(eq14)


def test_invalid_config():
    """Test optimizer config validation."""
    with pytest.raises(ConfigError):
        OptimizerConfig(restarts=0)
    with pytest.raises(ConfigError):
        OptimizerConfig(workers=0)


# =============================================================================
# Network measurements
# =============================================================================


def test_balanced_ghz_reaches_minus_one(cfg):
    """Test that the balanced E4 state reaches I = -1."""
    result = i_min_network("E4", [HALF, HALF], cfg)
    assert result.value == pytest.approx(-1.0, abs=1e-9)
    assert result.direction is Direction.MIN
    assert delta_indicator(result) == pytest.approx(1.0, abs=1e-9)


def test_unbalanced_ghz_is_negative(cfg):
    """Test that E4 stays strictly negative away from the balanced point."""
    l1 = math.sqrt(0.2)
    result = i_min_network("E4", [l1, math.sqrt(0.8)], cfg)
    assert result.value < -1e-3
    assert len(result.trace) == cfg.restarts + 3


def test_product_state_stays_at_zero(cfg, rng):
    """Test that a product state has zero information for every measurement."""
    spec = tripartite_network(product_state(*(random_pure_state(rng, (2,)) for _ in range(3))))
    result = i_min_network("custom", cfg=cfg, spec=spec)
    assert result.value == pytest.approx(0.0, abs=1e-9)


def test_chain_minimum_is_non_positive(cfg):
    """Test that chain networks never give positive minima."""
    result = i_min_network("chain", [math.pi / 5, math.pi / 3], cfg)
    assert result.value <= 1e-9
    assert len(result.argument) == 8


def test_chain_without_entangling_bases(cfg):
    """Test the product-basis restriction on the middle party."""
    result = i_min_network("chain", [math.pi / 5, math.pi / 3], cfg, entangling=False)
    assert result.value <= 1e-9


def test_network_search_is_deterministic(cfg):
    """Test that the seed fixes the random starts."""
    first = i_min_network("E4", [0.6, 0.8], cfg)
    second = i_min_network("E4", [0.6, 0.8], cfg)
    assert first.trace == second.trace
    assert first.argument == second.argument


def test_t_channel_value():
    """Test that the uniformizing channel gives zero information."""
    assert t_channel_information(ghz_type(0.3)) == pytest.approx(0.0, abs=1e-12)
    assert T_CHANNEL == "T"


def test_network_errors(cfg):
    """Test family, spec and party-count errors."""
    with pytest.raises(UnsupportedFamilyError):
        i_min_network("E9", [HALF, HALF], cfg)
    with pytest.raises(MeasurementError):
        i_min_network("custom", cfg=cfg)
    with pytest.raises(MeasurementError):
        i_min_network("chain", [0.3], cfg)
    with pytest.raises(MeasurementError):
        i_min_network("custom", cfg=cfg, spec=star_network([0.5, 0.5, 0.5]))


def test_extremum_document(cfg):
    """Test that the document carries delta only on request."""
    result = i_min_network("E4", [HALF, HALF], cfg)
    assert result.to_document().delta is None
    doc = result.to_document(with_delta=True)
    assert doc.delta == pytest.approx(-result.value)
    assert doc.direction == "min"
