"""Case classification, network realizations and inequality witnesses."""

import itertools
import math
from collections.abc import Callable, Iterator
from dataclasses import dataclass, field
from typing import Optional, Union

import numpy as np

from .config import DEFAULT_SEARCH, DEFAULT_TOLERANCES, SearchConfig
from .log import get_logger
from .models import (
    CaseLabel,
    DistributionError,
    NetworkConfig,
    NotApplicableError,
    ScanKind,
    SearchBoundError,
    Verdict,
)
from .probtab import (
    Channel,
    JointDistribution,
    apply_channel,
    ghz_w_mixture,
    is_product,
    linf_distance,
    marginalize,
    permute,
    product,
    relabel,
    rename,
    split_variable,
    to_document,
)
from .schemas import ChainPlanDoc, InfoReportDoc, WitnessReportDoc
from .shannon import (
    Bits,
    conditional_mutual_information,
    entropy,
    entropy_vector,
    is_polymatroid,
    mutual_information,
    tripartite_information,
)

logger = get_logger(__name__)

FINNER_SLACK = 1e-12


def _triple(P: JointDistribution) -> tuple[str, str, str]:
    if P.arity != 3:
        raise DistributionError(f"expected three variables, got {list(P.names)}", "variables")
    return P.names[0], P.names[1], P.names[2]


def _xlogx(p: float) -> float:
    return p * math.log2(p) if p > 0 else 0.0


# =============================================================================
# Case classification
# =============================================================================


def classify_case(P: JointDistribution, tol: float = DEFAULT_TOLERANCES.info) -> CaseLabel:
    """Label P by the signs of I(X;Y) and I(X;Y|Z)."""
    x, y, z = _triple(P)
    i_xy = mutual_information(P, x, y)
    i_xy_z = conditional_mutual_information(P, x, y, z)
    if i_xy <= tol:
        return CaseLabel.CASE_ONE if i_xy_z > tol else CaseLabel.DEGENERATE
    return CaseLabel.CASE_TWO if i_xy_z > tol else CaseLabel.NON_NEGATIVE


def info_report(P: JointDistribution, tol: float = DEFAULT_TOLERANCES.info) -> InfoReportDoc:
    """Subset entropies and pairwise information; three-way quantities for three variables."""
    vector = entropy_vector(P)
    # entropy_vector lists subsets by size, then in variable order
    entropies = {",".join(sorted(s, key=P.index)): value for s, value in vector.items()}
    pairwise = {
        f"{a};{b}": mutual_information(P, a, b) for a, b in itertools.combinations(P.names, 2)
    }
    report = InfoReportDoc(
        variables=list(P.names),
        entropies=entropies,
        mutual_information=pairwise,
        polymatroid=is_polymatroid(vector, tol),
    )
    if P.arity == 3:
        x, y, z = P.names
        report.conditional_mutual_information = {
            f"{x};{y}|{z}": conditional_mutual_information(P, x, y, z),
            f"{x};{z}|{y}": conditional_mutual_information(P, x, z, y),
            f"{y};{z}|{x}": conditional_mutual_information(P, y, z, x),
        }
        report.tripartite_information = tripartite_information(P)
        report.case = classify_case(P, tol).value
    return report


# =============================================================================
# Chain realization
# =============================================================================


@dataclass(frozen=True)
class ChainRealizationPlan:
    """Two independent sources plus a post-processing channel g on (z1, z2).

    Args:
        p_xz1: Source shared by X and the first input of the middle node
        p_yz2: Source shared by Y and the second input of the middle node
        g: Channel from z1 * |Y| + z2 to Z
        names: Labels (X, Y, Z) of the realized distribution
    """

    p_xz1: JointDistribution
    p_yz2: JointDistribution
    g: Channel
    names: tuple[str, str, str]

    def to_document(self, round_trip_error: float) -> ChainPlanDoc:
        return ChainPlanDoc(
            p_xz1=to_document(self.p_xz1),
            p_yz2=to_document(self.p_yz2),
            g=self.g.matrix.tolist(),
            round_trip_error=round_trip_error,
        )


def _diagonal_source(marginal: np.ndarray, names: tuple[str, str]) -> JointDistribution:
    return JointDistribution.from_table(names, np.diag(marginal))


def chain_compatible(
    P: JointDistribution, tol: float = DEFAULT_TOLERANCES.info
) -> ChainRealizationPlan:
    """Construct a chain realization of P when I(X;Y) <= tol.

    Raises:
        NotApplicableError: If I(X;Y) exceeds tol
    """
    x, y, z = _triple(P)
    i_xy = mutual_information(P, x, y)
    if i_xy > tol:
        raise NotApplicableError(f"I({x};{y}) = {i_xy:.6g} > {tol:g}; no chain realization")

    table = P.table
    px, py = table.sum(axis=(1, 2)), table.sum(axis=(0, 2))
    cx, cy, cz = P.cards
    pxy = table.sum(axis=2)

    g = np.zeros((cz, cx * cy))
    for i, j in itertools.product(range(cx), range(cy)):
        column = i * cy + j
        if pxy[i, j] > 0:
            g[:, column] = table[i, j, :] / pxy[i, j]
        else:
            g[0, column] = 1.0
    plan = ChainRealizationPlan(
        p_xz1=_diagonal_source(px, (x, f"{z}1")),
        p_yz2=_diagonal_source(py, (y, f"{z}2")),
        g=Channel(g / g.sum(axis=0, keepdims=True)),
        names=(x, y, z),
    )
    logger.debug("chain plan for %s with |Z1|=%d |Z2|=%d", list(P.names), cx, cy)
    return plan


def simulate_chain_plan(plan: ChainRealizationPlan) -> JointDistribution:
    """Rebuild the distribution a chain plan generates."""
    x, y, z = plan.names
    z1, z2 = plan.p_xz1.names[1], plan.p_yz2.names[1]
    cy = plan.p_yz2.card(z2)
    joint = product(plan.p_xz1, plan.p_yz2)
    merged_card = plan.p_xz1.card(z1) * cy
    table = {
        (a, b): a * cy + b for a, b in itertools.product(range(plan.p_xz1.card(z1)), range(cy))
    }
    merged = relabel(joint, (z1, z2), table, f"{z}12", new_card=merged_card)
    out = rename(apply_channel(merged, f"{z}12", plan.g), {f"{z}12": z})
    return permute(out, (x, y, z))


def chain_round_trip_error(P: JointDistribution, plan: ChainRealizationPlan) -> float:
    """ℓ∞ distance between P and the plan's simulation."""
    return linf_distance(simulate_chain_plan(plan), permute(P, plan.names))


# =============================================================================
# Triangle decomposition search
# =============================================================================


@dataclass(frozen=True)
class TriangleDecomposition:
    """Bijective splits x -> (x1, x2), y -> (y1, y2) with P = P_{x1 y1} x P_{x2 y2 z}.

    Grids list the original symbol at each (first, second) position.
    """

    x_grid: tuple[tuple[int, ...], ...]
    y_grid: tuple[tuple[int, ...], ...]
    first: JointDistribution
    second: JointDistribution

    @property
    def x_map(self) -> dict[int, tuple[int, int]]:
        return _grid_map(self.x_grid)

    @property
    def y_map(self) -> dict[int, tuple[int, int]]:
        return _grid_map(self.y_grid)


def _grid_map(grid: tuple[tuple[int, ...], ...]) -> dict[int, tuple[int, int]]:
    return {symbol: (r, c) for r, row in enumerate(grid) for c, symbol in enumerate(row)}


def _factor_pairs(card: int, max_factor_card: int) -> list[tuple[int, int]]:
    return [
        (c1, card // c1)
        for c1 in range(1, card + 1)
        if card % c1 == 0 and c1 <= max_factor_card and card // c1 <= max_factor_card
    ]


class _NodeBudget:
    def __init__(self, limit: int):
        self.limit = limit
        self.visited = 0

    def tick(self) -> None:
        self.visited += 1
        if self.visited > self.limit:
            raise SearchBoundError(f"triangle search exceeded {self.limit} nodes")


def _canonical_grids(
    rows: int,
    cols: int,
    slices: np.ndarray,
    budget: _NodeBudget,
    tol: float,
) -> Iterator[tuple[tuple[int, ...], ...]]:
    """Grids with the smallest symbol at (0, 0) and increasing first row and column.

    slices[v] is the joint marginal row p(v, z); a cell (r, c) with r > 0 is kept
    only if the first factor stays independent of (second factor, Z) so far.
    """
    symbols = slices.shape[0]
    mass = slices.sum(axis=1)
    grid = [[-1] * cols for _ in range(rows)]
    used = [False] * symbols

    def consistent(r: int, c: int) -> bool:
        if r == 0:
            return True
        lhs = slices[grid[r][c]] * mass[grid[0][0]]
        rhs = mass[grid[r][0]] * slices[grid[0][c]]
        return bool(np.abs(lhs - rhs).max() <= tol)

    def fill(cell: int) -> Iterator[tuple[tuple[int, ...], ...]]:
        if cell == rows * cols:
            yield tuple(tuple(row) for row in grid)
            return
        r, c = divmod(cell, cols)
        if cell == 0:
            candidates: range = range(0, 1)
        elif r == 0:
            candidates = range(grid[0][c - 1] + 1, symbols)
        elif c == 0:
            candidates = range(grid[r - 1][0] + 1, symbols)
        else:
            candidates = range(1, symbols)
        for value in candidates:
            if used[value]:
                continue
            budget.tick()
            grid[r][c] = value
            used[value] = True
            if consistent(r, c):
                yield from fill(cell + 1)
            used[value] = False
            grid[r][c] = -1

    yield from fill(0)


def _split(
    P: JointDistribution, var: str, grid: tuple[tuple[int, ...], ...]
) -> JointDistribution:
    rows, cols = len(grid), len(grid[0])
    return split_variable(P, var, (f"{var}1", f"{var}2"), (rows, cols), _grid_map(grid))


def triangle_decomposition_search(
    P: JointDistribution,
    max_factor_card: Optional[int] = None,
    tol: float = DEFAULT_TOLERANCES.prob,
    search: SearchConfig = DEFAULT_SEARCH,
) -> Optional[TriangleDecomposition]:
    """Search for g1, g2 with P_{g1(x) g2(y) z} = P_{x1 y1} x P_{x2 y2 z}.

    Factor cardinalities are tried as (c1, c2) with c1 ascending, X before Y.
    The second factor must have I(X2;Y2) <= tol.

    Args:
        P: Tripartite distribution
        max_factor_card: Largest allowed factor cardinality (default: no bound)
        tol: Tolerance for the product and independence checks
        search: Alphabet and node bounds

    Returns:
        The first decomposition in canonical order, or None

    Raises:
        SearchBoundError: If |X| or |Y| exceeds the alphabet bound, or the node
            budget runs out
    """
    x, y, z = _triple(P)
    cx, cy = P.card(x), P.card(y)
    if max(cx, cy) > search.max_alphabet:
        raise SearchBoundError(
            f"alphabets {cx}x{cy} exceed the search bound {search.max_alphabet}"
        )
    limit = max_factor_card if max_factor_card is not None else max(cx, cy)
    budget = _NodeBudget(search.max_nodes)
    xz = marginalize(P, (x, z)).table
    yz = marginalize(P, (y, z)).table

    for x_pair, y_pair in itertools.product(_factor_pairs(cx, limit), _factor_pairs(cy, limit)):
        logger.debug("triangle search: X %s, Y %s", x_pair, y_pair)
        for x_grid in _canonical_grids(*x_pair, xz, budget, tol):
            for y_grid in _canonical_grids(*y_pair, yz, budget, tol):
                split = _split(_split(P, x, x_grid), y, y_grid)
                first, second = (f"{x}1", f"{y}1"), (f"{x}2", f"{y}2", z)
                if not is_product(split, [first, second], tol):
                    continue
                factor = marginalize(split, second)
                if mutual_information(factor, second[0], second[1]) > DEFAULT_TOLERANCES.info:
                    continue
                logger.debug("triangle decomposition found after %d nodes", budget.visited)
                return TriangleDecomposition(
                    x_grid=x_grid,
                    y_grid=y_grid,
                    first=marginalize(split, first),
                    second=factor,
                )
    logger.debug("no triangle decomposition after %d nodes", budget.visited)
    return None


# =============================================================================
# Inequality witnesses
# =============================================================================


def finner_check(P: JointDistribution, exponent: float = 0.5) -> bool:
    """True iff p(x,y,z) <= (p(x) p(y) p(z))^exponent for every outcome."""
    _triple(P)
    table = P.table
    px = table.sum(axis=(1, 2))[:, None, None]
    py = table.sum(axis=(0, 2))[None, :, None]
    pz = table.sum(axis=(0, 1))[None, None, :]
    bound = np.power(px * py * pz, exponent)
    return bool(np.all(table <= bound + FINNER_SLACK))


@dataclass(frozen=True)
class WitnessReport:
    """Slacks of the network inequalities; positive slack means satisfied."""

    case: CaseLabel
    tripartite_information: Bits
    slack19: Bits
    slack20: Bits
    slack22: Bits
    slack23: Bits
    finner_ok: bool
    finner13_ok: bool
    excluded_by: dict[NetworkConfig, tuple[str, ...]] = field(default_factory=dict)

    @property
    def verdicts(self) -> dict[NetworkConfig, Verdict]:
        return {
            config: Verdict.EXCLUDED if self.excluded_by.get(config) else Verdict.NOT_EXCLUDED
            for config in NetworkConfig
        }

    @property
    def any_excluded(self) -> bool:
        return any(self.excluded_by.get(config) for config in NetworkConfig)

    def to_document(self) -> WitnessReportDoc:
        return WitnessReportDoc(
            case=self.case.value,
            tripartite_information=self.tripartite_information,
            slack19=self.slack19,
            slack20=self.slack20,
            slack22=self.slack22,
            slack23=self.slack23,
            finner_ok=self.finner_ok,
            finner13_ok=self.finner13_ok,
            verdicts={config.value: verdict.value for config, verdict in self.verdicts.items()},
            excluded_by={
                config.value: list(self.excluded_by.get(config, ())) for config in NetworkConfig
            },
        )


def _slacks(P: JointDistribution) -> tuple[Bits, Bits, Bits, Bits, Bits]:
    x, y, z = _triple(P)
    h1 = entropy(P, x) + entropy(P, y) + entropy(P, z)
    h2 = entropy(P, (x, y)) + entropy(P, (x, z)) + entropy(P, (y, z))
    h3 = entropy(P, (x, y, z))
    info = h1 - h2 + h3
    conditional = min(
        h3 - entropy(P, (y, z)), h3 - entropy(P, (x, z)), h3 - entropy(P, (x, y))
    )
    slack19 = conditional - info
    slack20 = info - (1.5 * h1 - h2)
    slack22 = (4 * h3 - h2) - info
    slack23 = info - (4.0 / 3.0 * h1 - h2)
    return info, slack19, slack20, slack22, slack23


def evaluate_inequalities(
    P: JointDistribution, tol: float = DEFAULT_TOLERANCES.info
) -> WitnessReport:
    """Evaluate the triangle and one-source network inequalities on P.

    A slack counts as violated only when it is below -tol.
    """
    info, s19, s20, s22, s23 = _slacks(P)
    finner_ok = finner_check(P, 0.5)
    finner13_ok = finner_check(P, 1.0 / 3.0)

    triangle = [name for name, s in (("slack19", s19), ("slack20", s20)) if s < -tol]
    if not finner_ok:
        triangle.append("finner")
    one_source = [name for name, s in (("slack22", s22), ("slack23", s23)) if s < -tol]
    if not finner13_ok:
        one_source.append("finner13")

    return WitnessReport(
        case=classify_case(P, tol),
        tripartite_information=info,
        slack19=s19,
        slack20=s20,
        slack22=s22,
        slack23=s23,
        finner_ok=finner_ok,
        finner13_ok=finner13_ok,
        excluded_by={
            NetworkConfig.TRIANGLE: tuple(triangle),
            NetworkConfig.ONE_SOURCE: tuple(one_source),
        },
    )


# =============================================================================
# Mixture scans
# =============================================================================

SLACK_NAMES = ("slack19", "slack20", "slack22", "slack23")


def _binding_slack(p: float, tol: float) -> Optional[str]:
    _, *slacks = _slacks(ghz_w_mixture(p))
    for name, value in zip(SLACK_NAMES, slacks):
        if value < -tol:
            return name
    return None


def _bisect(predicate: Callable[[float], bool], lo: float, hi: float, tol: float) -> float:
    """Boundary between lo (predicate false) and hi (predicate true)."""
    while hi - lo > tol:
        mid = 0.5 * (lo + hi)
        if predicate(mid):
            hi = mid
        else:
            lo = mid
    return 0.5 * (lo + hi)


def scan_mixture_threshold(
    kind: Union[str, ScanKind],
    steps: int = 200,
    tol: float = 1e-4,
) -> tuple[float, Optional[str]]:
    """Locate the sign change or first witness violation along the GHZ/W mixture.

    Args:
        kind: info_sign (largest p with I <= 0) or witness (smallest excluded p)
        steps: Grid points on [0, 1] before bisection
        tol: Bisection width

    Returns:
        (threshold, binding slack name or None)
    """
    kind = ScanKind(kind)
    if steps < 100:
        raise DistributionError(f"steps must be at least 100, got {steps}", "steps")
    if tol <= 0:
        raise DistributionError("tol must be positive", "tol")
    grid = np.linspace(0.0, 1.0, steps + 1)

    if kind is ScanKind.INFO_SIGN:
        def positive(p: float) -> bool:
            return tripartite_information(ghz_w_mixture(p)) > 0

        flags = [positive(float(p)) for p in grid]
        if not any(flags):
            return 1.0, None
        first = flags.index(True)
        if first == 0:
            return 0.0, None
        return _bisect(positive, float(grid[first - 1]), float(grid[first]), tol), None

    def excluded(p: float) -> bool:
        return _binding_slack(p, DEFAULT_TOLERANCES.info) is not None

    for index, p in enumerate(grid):
        if excluded(float(p)):
            if index == 0:
                return 0.0, _binding_slack(0.0, DEFAULT_TOLERANCES.info)
            threshold = _bisect(excluded, float(grid[index - 1]), float(p), tol)
            binding = _binding_slack(min(1.0, threshold + tol), DEFAULT_TOLERANCES.info)
            logger.debug("witness threshold %.6f bound by %s", threshold, binding)
            return threshold, binding
    return 1.0, None


# =============================================================================
# Closed forms
# =============================================================================


def w_type_closed_form(a: float, b: float) -> Bits:
    """I(X;Y;Z) of a[001] + b[010] + c[100] with c = 1 - a - b."""
    c = 1.0 - a - b
    return (
        _xlogx(a) + _xlogx(b) + _xlogx(c)
        - _xlogx(1 - a) - _xlogx(1 - b) - _xlogx(1 - c)
    )


def ee0a_closed_form(a: float, b: float, c: float) -> Bits:
    """I(X;Y;Z) of a[001] + b[010] + c[100] + d[011] with d = 1 - a - b - c."""
    return (
        _xlogx(a) + _xlogx(b) + _xlogx(c)
        - _xlogx(1 - c) - _xlogx(a + c) - _xlogx(b + c)
    )


def ee0d_closed_form(a: float, b: float, c: float) -> Bits:
    """I(X;Y;Z) of a[010] + b[011] + c[100] + d[101]; equals I(X;Z) >= 0."""
    d = 1.0 - a - b - c
    return (
        _xlogx(a) + _xlogx(b) + _xlogx(c) + _xlogx(d)
        - _xlogx(a + b) - _xlogx(c + d) - _xlogx(a + c) - _xlogx(b + d)
    )
