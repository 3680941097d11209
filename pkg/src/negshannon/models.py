"""Enums, labels and exceptions shared across negshannon."""

from enum import Enum
from typing import Optional


class Family(str, Enum):
    """Named distribution families understood by the generator."""
    FIG1 = "fig1"
    EQ11 = "eq11"
    EQ14 = "eq14"
    GHZ_TYPE = "ghz_type"
    W_TYPE = "w_type"
    GHZ_W_MIXTURE = "ghz_w_mixture"
    W4 = "w4"
    CHAIN_EXAMPLE = "chain_example"
    STAR_EXAMPLE = "star_example"
    TRIANGLE_EXAMPLE = "triangle_example"


class W4Kind(str, Enum):
    """Four-point W-type families over three bits."""
    EE0A = "EE0a"
    EE0B = "EE0b"
    EE0C = "EE0c"
    EE0D = "EE0d"
    EE0E = "EE0e"
    EE0F = "EE0f"


# Support points (x, y, z) weighted by a, b, c, d in that order
W4_SUPPORTS: dict[str, tuple[tuple[int, int, int], ...]] = {
    "EE0a": ((0, 0, 1), (0, 1, 0), (1, 0, 0), (0, 1, 1)),
    "EE0b": ((0, 0, 1), (0, 1, 0), (1, 0, 0), (1, 0, 1)),
    "EE0c": ((0, 0, 1), (0, 1, 0), (1, 0, 0), (1, 1, 0)),
    "EE0d": ((0, 1, 0), (0, 1, 1), (1, 0, 0), (1, 0, 1)),
    "EE0e": ((0, 0, 1), (0, 1, 0), (1, 0, 1), (1, 1, 0)),
    "EE0f": ((0, 0, 1), (0, 1, 1), (1, 0, 0), (1, 1, 0)),
}


class CaseLabel(str, Enum):
    """Information case of a tripartite distribution."""
    CASE_ONE = "CaseOne"
    CASE_TWO = "CaseTwo"
    NON_NEGATIVE = "NonNegative"
    DEGENERATE = "Degenerate"


class Verdict(str, Enum):
    """Outcome of a necessary-condition witness for one network configuration."""
    NOT_EXCLUDED = "compatible-not-excluded"
    EXCLUDED = "excluded"


class NetworkConfig(str, Enum):
    """Tripartite network configurations the inequality witnesses speak about."""
    TRIANGLE = "triangle"
    ONE_SOURCE = "one_source"


class ScanKind(str, Enum):
    """Threshold kinds for the GHZ/W mixture scan."""
    INFO_SIGN = "info_sign"
    WITNESS = "witness"


class Direction(str, Enum):
    """Extremization direction."""
    MAX = "max"
    MIN = "min"


class Independence(str, Enum):
    """Independence premise used by the inflation certifier."""
    FULL = "full"
    SOURCES = "sources"


class StarMode(str, Enum):
    """Central measurement of the star network."""
    FOURIER = "fourier"
    GHZ_SWAP = "ghz_swap"


class QuantumFamily(str, Enum):
    """Network families accepted by the measurement search."""
    E4 = "E4"
    E5 = "E5"
    E6 = "E6"
    CHAIN = "chain"
    CUSTOM = "custom"


class NegShannonError(Exception):
    """Base exception for negshannon errors."""
    pass


class DistributionError(NegShannonError):
    """Invalid distribution, label, outcome or distribution file."""
    def __init__(self, message: str, field: Optional[str] = None):
        self.message = message
        self.field = field
        super().__init__(f"{field}: {message}" if field else message)


class ChannelError(NegShannonError):
    """Channel is not stochastic or does not fit the variable."""
    pass


class NotApplicableError(NegShannonError):
    """Input does not satisfy the information precondition of a construction."""
    pass


class SearchBoundError(NegShannonError):
    """Search space exceeds the configured bounds."""
    pass


class MeasurementError(NegShannonError):
    """Invalid quantum state, measurement or network wiring."""
    pass


class UnsupportedFamilyError(NegShannonError):
    """Unknown generator or network family."""
    pass


class ConfigError(NegShannonError):
    """Invalid configuration value."""
    pass
