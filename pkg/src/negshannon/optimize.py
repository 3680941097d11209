"""Grid-plus-simplex extremization of tripartite information."""

import math
from collections.abc import Callable, Sequence
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from typing import Optional, Union

import numpy as np
from scipy.optimize import minimize
from scipy.special import entr

from .config import DEFAULT_OPTIMIZER, OptimizerConfig
from .log import get_logger
from .models import (
    Direction,
    DistributionError,
    MeasurementError,
    QuantumFamily,
    UnsupportedFamilyError,
)
from .probtab import JointDistribution, apply_channel, bit_flip_channel, tmap_channel
from .quantum import (
    NetworkSpec,
    Party,
    born_distribution,
    canonical_tripartite_state,
    chain_network,
    computational_measurement,
    epr_pair,
    local_qubit_measurement,
    tripartite_network,
)
from .schemas import ExtremumDoc
from .shannon import Bits, tripartite_information

logger = get_logger(__name__)

LN2 = math.log(2)
T_CHANNEL = "T"


@dataclass(frozen=True)
class ExtremumResult:
    """Best objective value, where it was reached, and the per-start bests."""

    value: Bits
    argument: tuple[float, ...]
    trace: tuple[float, ...]
    direction: Direction
    post_channel: Optional[str] = None

    def to_document(self, with_delta: bool = False) -> ExtremumDoc:
        return ExtremumDoc(
            direction=self.direction.value,
            value=self.value,
            argument=list(self.argument),
            trace=list(self.trace),
            post_channel=self.post_channel,
            delta=delta_indicator(self) if with_delta else None,
        )


def delta_indicator(result: ExtremumResult) -> Bits:
    """Information-increasing indicator: the negated minimum."""
    return -result.value


def _refine(
    objective: Callable[[np.ndarray], float],
    start: np.ndarray,
    bounds: Sequence[tuple[float, float]],
    cfg: OptimizerConfig,
) -> tuple[float, np.ndarray]:
    """Nelder-Mead from start; keeps the start if the simplex does not improve on it."""
    start_value = objective(start)
    result = minimize(
        objective,
        start,
        method="Nelder-Mead",
        bounds=bounds,
        options={"maxiter": cfg.max_iterations, "xatol": cfg.xtol, "fatol": cfg.ftol},
    )
    lower, upper = np.array(bounds).T
    point = np.clip(result.x, lower, upper)
    value = objective(point)
    if value > start_value:
        return start_value, np.asarray(start, dtype=float)
    return value, point


def _run_starts(
    objective: Callable[[np.ndarray], float],
    starts: Sequence[np.ndarray],
    bounds: Sequence[tuple[float, float]],
    cfg: OptimizerConfig,
) -> list[tuple[float, np.ndarray]]:
    """Refine every start; results stay in start order."""
    if cfg.workers > 1:
        with ThreadPoolExecutor(max_workers=cfg.workers) as pool:
            return list(pool.map(lambda s: _refine(objective, s, bounds, cfg), starts))
    return [_refine(objective, s, bounds, cfg) for s in starts]


def _best(results: Sequence[tuple[float, np.ndarray]]) -> int:
    """Index of the smallest value; ties go to the earliest start."""
    return min(range(len(results)), key=lambda k: (results[k][0], k))


# =============================================================================
# Local doubly stochastic channels
# =============================================================================


def channel_information(P: JointDistribution, gammas: Sequence[float]) -> Bits:
    """I(X';Y';Z') after a bit-flip channel of angle gammas[k] on variable k."""
    out = P
    for name, gamma in zip(P.names, gammas):
        out = apply_channel(out, name, bit_flip_channel(float(gamma)))
    return tripartite_information(out)


def _grid_information(table: np.ndarray, gammas: np.ndarray) -> np.ndarray:
    """Tripartite information on the full gamma grid, shape (g, g, g)."""
    c, s = np.cos(gammas) ** 2, np.sin(gammas) ** 2
    u = np.stack([np.stack([c, s], axis=-1), np.stack([s, c], axis=-1)], axis=1)
    joint = np.einsum("iax,jby,kcz,xyz->ijkabc", u, u, u, table)

    def h(marginal: np.ndarray) -> np.ndarray:
        return entr(marginal).sum(axis=tuple(range(3, marginal.ndim))) / LN2

    return (
        h(joint.sum(axis=(4, 5))) + h(joint.sum(axis=(3, 5))) + h(joint.sum(axis=(3, 4)))
        - h(joint.sum(axis=5)) - h(joint.sum(axis=4)) - h(joint.sum(axis=3))
        + h(joint)
    )


def extremize_under_local_channels(
    P: JointDistribution,
    direction: Union[str, Direction] = Direction.MAX,
    cfg: OptimizerConfig = DEFAULT_OPTIMIZER,
) -> ExtremumResult:
    """Extremize I(X;Y;Z) over independent bit-flip channels on X, Y and Z.

    A grid over [0, pi/2]^3 ranks the start cells; the best cfg.restarts cells
    are refined by bounded Nelder-Mead.

    Args:
        P: Distribution over three binary variables
        direction: max or min
        cfg: Grid resolution, restart count and simplex tolerances

    Returns:
        ExtremumResult whose argument holds the three channel angles
    """
    direction = Direction(direction)
    if P.arity != 3 or any(c != 2 for c in P.cards):
        raise DistributionError(
            f"channel search needs three binary variables, got cards {list(P.cards)}",
            "cardinalities",
        )
    sign = 1.0 if direction is Direction.MIN else -1.0
    gammas = np.linspace(0.0, math.pi / 2, cfg.grid_resolution)
    grid = sign * _grid_information(P.table, gammas).ravel()
    order = np.argsort(grid, kind="stable")[: cfg.restarts]
    starts = [
        gammas[np.array(np.unravel_index(int(k), (len(gammas),) * 3))] for k in order
    ]
    logger.debug(
        "channel grid %d^3, best cell %.6f", len(gammas), sign * float(grid[order[0]])
    )

    def objective(point: np.ndarray) -> float:
        return sign * channel_information(P, point)

    bounds = [(0.0, math.pi / 2)] * 3
    results = _run_starts(objective, starts, bounds, cfg)
    trace = tuple(sign * value for value, _ in results)
    best = _best(results)
    argument = tuple(float(v) for v in results[best][1])
    return ExtremumResult(
        value=channel_information(P, argument),
        argument=argument,
        trace=trace,
        direction=direction,
    )


# =============================================================================
# Local measurements on quantum networks
# =============================================================================


def _qubits_per_party(spec: NetworkSpec) -> list[int]:
    counts = []
    for party in spec.parties:
        if any(d != 2 for d in party.measurement.dims):
            raise MeasurementError(f"{party.name}: measurement search needs qubit subsystems")
        counts.append(len(party.slots))
    return counts


def _with_measurements(
    spec: NetworkSpec, angles: np.ndarray, counts: Sequence[int], entangling: bool
) -> NetworkSpec:
    parties = []
    offset = 0
    for party, count in zip(spec.parties, counts):
        pairs = [
            (float(angles[offset + 2 * q]), float(angles[offset + 2 * q + 1]))
            for q in range(count)
        ]
        offset += 2 * count
        parties.append(
            Party(party.name, party.slots, local_qubit_measurement(pairs, entangling))
        )
    return NetworkSpec(spec.sources, tuple(parties))


def _base_network(
    family: QuantumFamily, params: Sequence[float], spec: Optional[NetworkSpec]
) -> NetworkSpec:
    if family in (QuantumFamily.E4, QuantumFamily.E5, QuantumFamily.E6):
        return tripartite_network(canonical_tripartite_state(family, params))
    if family is QuantumFamily.CHAIN:
        if len(params) != 2:
            raise MeasurementError(f"chain family takes two source angles, got {len(params)}")
        qubit = computational_measurement((2,))
        return chain_network(
            epr_pair(params[0]),
            epr_pair(params[1]),
            (qubit, qubit, computational_measurement((2, 2))),
        )
    if spec is None:
        raise MeasurementError("custom family needs a network spec")
    return spec


def t_channel_information(P: JointDistribution) -> Bits:
    """I(X;Y;Z) after the uniformizing channel on every variable."""
    out = P
    for name, card in zip(P.names, P.cards):
        out = apply_channel(out, name, tmap_channel(card, card))
    return tripartite_information(out)


def i_min_network(
    family: Union[str, QuantumFamily],
    params: Sequence[float] = (),
    cfg: OptimizerConfig = DEFAULT_OPTIMIZER,
    spec: Optional[NetworkSpec] = None,
    entangling: bool = True,
) -> ExtremumResult:
    """Minimize I(X;Y;Z) over local projective qubit measurements of a network.

    Every qubit is measured in a basis given by (polar, azimuth). Parties
    holding several qubits apply a CNOT ladder first when entangling is set.
    The computational, all-Hadamard and first-qubit-Hadamard settings are
    always tried, as is the uniformizing post-channel.

    Args:
        family: E4, E5, E6, chain or custom
        params: State parameters (E4-E6) or the two source angles (chain)
        cfg: Restart count, seed and simplex tolerances
        spec: Network for the custom family
        entangling: Allow CNOT-ladder bases on multi-qubit parties

    Returns:
        ExtremumResult with the measurement angles; post_channel is "T" when the
        uniformizing channel gives the minimum
    """
    try:
        family = QuantumFamily(family)
    except ValueError:
        raise UnsupportedFamilyError(f"unknown network family {family!r}") from None
    base = _base_network(family, [float(p) for p in params], spec)
    if len(base.parties) != 3:
        raise MeasurementError(f"expected three parties, got {len(base.parties)}")
    counts = _qubits_per_party(base)
    dim = 2 * sum(counts)

    def distribution(point: np.ndarray) -> JointDistribution:
        return born_distribution(_with_measurements(base, point, counts, entangling))

    def objective(point: np.ndarray) -> float:
        return tripartite_information(distribution(point))

    computational = np.zeros(dim)
    hadamard = np.tile([math.pi / 2, 0.0], dim // 2)
    first_hadamard = np.zeros(dim)
    offset = 0
    for count in counts:
        first_hadamard[offset] = math.pi / 2
        offset += 2 * count

    rng = np.random.default_rng(cfg.seed)
    scale = np.tile([math.pi, 2 * math.pi], dim // 2)
    random_starts = list(rng.uniform(size=(cfg.restarts, dim)) * scale)
    starts = [computational, hadamard, first_hadamard] + random_starts
    bounds = [(0.0, math.pi), (0.0, 2 * math.pi)] * (dim // 2)

    results = _run_starts(objective, starts, bounds, cfg)
    trace = tuple(value for value, _ in results)
    best = _best(results)
    value, point = results[best]
    logger.debug("I_min search over %d angles: best start %d value %.6g", dim, best, value)

    t_value = t_channel_information(distribution(computational))
    if t_value < value:
        return ExtremumResult(
            value=t_value,
            argument=tuple(float(v) for v in computational),
            trace=trace,
            direction=Direction.MIN,
            post_channel=T_CHANNEL,
        )
    argument = tuple(float(v) for v in point)
    return ExtremumResult(
        value=objective(np.array(argument)),
        argument=argument,
        trace=trace,
        direction=Direction.MIN,
    )
