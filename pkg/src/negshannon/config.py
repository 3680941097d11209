"""Numeric tolerances and search configurations."""

from dataclasses import dataclass

from .models import ConfigError


@dataclass(frozen=True)
class Tolerances:
    """Tolerances for distribution, channel, measurement and information checks."""

    prob: float = 1e-9
    channel: float = 1e-12
    psd: float = 1e-10
    info: float = 1e-9


@dataclass(frozen=True)
class OptimizerConfig:
    """Configuration for grid-plus-simplex extremization."""

    restarts: int = 4
    seed: int = 0
    max_iterations: int = 400
    xtol: float = 1e-7
    ftol: float = 1e-10
    grid_resolution: int = 33
    workers: int = 1

    def __post_init__(self) -> None:
        if self.restarts < 1:
            raise ConfigError(f"restarts must be >= 1, got {self.restarts}")
        if not 0 <= self.seed < 2**64:
            raise ConfigError(f"seed must fit in 64 bits, got {self.seed}")
        if self.max_iterations < 1:
            raise ConfigError(f"max_iterations must be >= 1, got {self.max_iterations}")
        if self.xtol <= 0 or self.ftol <= 0:
            raise ConfigError("xtol and ftol must be positive")
        if self.grid_resolution < 1:
            raise ConfigError(f"grid_resolution must be >= 1, got {self.grid_resolution}")
        if self.workers < 1:
            raise ConfigError(f"workers must be >= 1, got {self.workers}")


@dataclass(frozen=True)
class SearchConfig:
    """Bounds for the triangle decomposition search."""

    max_alphabet: int = 12
    max_nodes: int = 200_000

    def __post_init__(self) -> None:
        if self.max_alphabet < 1 or self.max_nodes < 1:
            raise ConfigError("search bounds must be positive")


DEFAULT_TOLERANCES = Tolerances()

# Full 33^3 channel grid
DEFAULT_OPTIMIZER = OptimizerConfig()

# Coarser grid and fewer restarts; used by the examples runner and tests
FAST_OPTIMIZER = OptimizerConfig(
    restarts=3,
    max_iterations=200,
    grid_resolution=17,
)

DEFAULT_SEARCH = SearchConfig()
