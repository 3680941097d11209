"""Finite joint distributions, channels and the named example families."""

import itertools
import math
import sys
from collections.abc import Iterable, Mapping, Sequence
from dataclasses import dataclass
from pathlib import Path
from typing import Callable, Optional, Union

import numpy as np
from pydantic import ValidationError
from scipy.optimize import linear_sum_assignment

from .config import DEFAULT_TOLERANCES
from .log import get_logger
from .models import (
    W4_SUPPORTS,
    ChannelError,
    DistributionError,
    Family,
    UnsupportedFamilyError,
    W4Kind,
)
from .schemas import DistributionDoc, EntryDoc

logger = get_logger(__name__)

Labels = Union[str, Sequence[str]]
Outcome = tuple[int, ...]


# =============================================================================
# Core types
# =============================================================================


@dataclass(frozen=True, eq=False)
class JointDistribution:
    """Dense probability table over a finite product sample space.

    Args:
        names: Ordered variable labels
        cards: Cardinality of each variable
        probs: Row-major probabilities, length prod(cards)
    """

    names: tuple[str, ...]
    cards: tuple[int, ...]
    probs: np.ndarray

    def __post_init__(self) -> None:
        names = tuple(self.names)
        cards = tuple(int(c) for c in self.cards)
        probs = np.array(self.probs, dtype=float).ravel()
        if not names or len(names) != len(cards):
            raise DistributionError("names and cards must have equal non-zero length", "variables")
        if len(set(names)) != len(names):
            raise DistributionError(f"duplicate variable labels {names}", "variables")
        if any(c < 1 for c in cards):
            raise DistributionError(f"cardinalities must be positive, got {cards}", "cardinalities")
        if probs.size != math.prod(cards):
            raise DistributionError(
                f"table has {probs.size} cells, expected {math.prod(cards)}", "entries"
            )
        if not np.all(np.isfinite(probs)) or probs.min() < 0:
            raise DistributionError("probabilities must be finite and non-negative", "entries")
        total = float(probs.sum())
        if abs(total - 1.0) > DEFAULT_TOLERANCES.prob:
            raise DistributionError(f"probabilities sum to {total!r}, expected 1", "entries")
        probs.setflags(write=False)
        object.__setattr__(self, "names", names)
        object.__setattr__(self, "cards", cards)
        object.__setattr__(self, "probs", probs)

    @classmethod
    def from_table(cls, names: Sequence[str], table: np.ndarray) -> "JointDistribution":
        """Build from an n-dimensional array whose shape gives the cardinalities."""
        table = np.asarray(table, dtype=float)
        return cls(tuple(names), tuple(table.shape), table.ravel())

    @classmethod
    def from_points(
        cls,
        names: Sequence[str],
        cards: Sequence[int],
        points: Mapping[Outcome, float],
    ) -> "JointDistribution":
        """Build from a sparse outcome -> probability mapping."""
        table = np.zeros(tuple(cards))
        for outcome, p in points.items():
            _check_outcome(outcome, cards)
            table[tuple(outcome)] += p
        return cls(tuple(names), tuple(cards), table.ravel())

    @property
    def table(self) -> np.ndarray:
        """Probabilities reshaped to the cardinalities."""
        return self.probs.reshape(self.cards)

    @property
    def arity(self) -> int:
        return len(self.names)

    def index(self, name: str) -> int:
        """Position of a variable label."""
        try:
            return self.names.index(name)
        except ValueError:
            raise DistributionError(f"unknown variable {name!r}; have {list(self.names)}") from None

    def card(self, name: str) -> int:
        return self.cards[self.index(name)]

    def prob(self, outcome: Sequence[int]) -> float:
        """Probability of one outcome tuple."""
        _check_outcome(outcome, self.cards)
        return float(self.table[tuple(outcome)])

    def support(self) -> list[Outcome]:
        """Outcomes with positive probability in row-major order."""
        return [tuple(int(i) for i in idx) for idx in np.argwhere(self.table > 0)]

    def allclose(self, other: "JointDistribution", tol: float = DEFAULT_TOLERANCES.prob) -> bool:
        """Same labels and cardinalities, and ℓ∞ distance at most tol."""
        return (
            self.names == other.names
            and self.cards == other.cards
            and linf_distance(self, other) <= tol
        )

    def __repr__(self) -> str:
        points = ", ".join(
            f"{''.join(map(str, o))}:{self.table[o]:.6g}" for o in self.support()[:8]
        )
        more = "" if len(self.support()) <= 8 else ", ..."
        return f"JointDistribution({list(self.names)}, {list(self.cards)}, {{{points}{more}}})"


@dataclass(frozen=True, eq=False)
class Channel:
    """Column-stochastic map; matrix[new, old] = p(new | old)."""

    matrix: np.ndarray
    doubly_stochastic: bool = False

    def __post_init__(self) -> None:
        matrix = np.array(self.matrix, dtype=float)
        if matrix.ndim != 2 or 0 in matrix.shape:
            raise ChannelError(f"channel matrix must be 2-D and non-empty, got {matrix.shape}")
        tol = DEFAULT_TOLERANCES.channel
        if matrix.min() < 0:
            raise ChannelError("channel entries must be non-negative")
        if np.abs(matrix.sum(axis=0) - 1.0).max() > tol:
            raise ChannelError("every channel column must sum to 1")
        if self.doubly_stochastic:
            if matrix.shape[0] != matrix.shape[1]:
                raise ChannelError("a doubly stochastic channel must be square")
            if np.abs(matrix.sum(axis=1) - 1.0).max() > tol:
                raise ChannelError("every row of a doubly stochastic channel must sum to 1")
        matrix.setflags(write=False)
        object.__setattr__(self, "matrix", matrix)

    @property
    def in_card(self) -> int:
        return int(self.matrix.shape[1])

    @property
    def out_card(self) -> int:
        return int(self.matrix.shape[0])


def identity_channel(card: int) -> Channel:
    return Channel(np.eye(card), doubly_stochastic=True)


def tmap_channel(in_card: int = 2, out_card: int = 2) -> Channel:
    """Uniformizer: every input value goes to the uniform distribution."""
    return Channel(np.full((out_card, in_card), 1.0 / out_card))


def bit_flip_channel(gamma: float) -> Channel:
    """Doubly stochastic bit channel [[cos², sin²], [sin², cos²]] of angle gamma."""
    c, s = math.cos(gamma) ** 2, math.sin(gamma) ** 2
    return Channel(np.array([[c, s], [s, c]]), doubly_stochastic=True)


def deterministic_channel(table: Sequence[int], out_card: int) -> Channel:
    """Channel sending old value i to table[i] with certainty."""
    matrix = np.zeros((out_card, len(table)))
    for old, new in enumerate(table):
        if not 0 <= new < out_card:
            raise ChannelError(f"image {new} outside range {out_card}")
        matrix[new, old] = 1.0
    return Channel(matrix)


# =============================================================================
# Helpers
# =============================================================================


def _check_outcome(outcome: Sequence[int], cards: Sequence[int]) -> None:
    if len(outcome) != len(cards):
        raise DistributionError(f"outcome {list(outcome)} has wrong length", "outcome")
    for i, c in zip(outcome, cards):
        if not 0 <= int(i) < c:
            raise DistributionError(
                f"outcome {list(outcome)} out of range {list(cards)}", "outcome"
            )


def as_labels(labels: Labels) -> tuple[str, ...]:
    """Normalize a label or label sequence to a tuple."""
    if isinstance(labels, str):
        return (labels,)
    return tuple(labels)


def axes_of(P: JointDistribution, labels: Labels) -> tuple[int, ...]:
    """Axis positions of labels, rejecting duplicates and unknown names."""
    names = as_labels(labels)
    if len(set(names)) != len(names):
        raise DistributionError(f"duplicate labels in {list(names)}")
    return tuple(P.index(n) for n in names)


def linf_distance(P: JointDistribution, Q: JointDistribution) -> float:
    """ℓ∞ distance between two tables of identical shape."""
    if P.cards != Q.cards:
        raise DistributionError(f"shapes differ: {P.cards} vs {Q.cards}")
    return float(np.abs(P.probs - Q.probs).max())


# =============================================================================
# Algebra
# =============================================================================


def marginalize(P: JointDistribution, keep: Labels) -> JointDistribution:
    """Marginal over keep, in the order given."""
    axes = axes_of(P, keep)
    if not axes:
        raise DistributionError("keep must be non-empty")
    dropped = tuple(i for i in range(P.arity) if i not in axes)
    table = P.table.sum(axis=dropped) if dropped else P.table
    kept_sorted = sorted(axes)
    table = np.transpose(table, [kept_sorted.index(a) for a in axes])
    return JointDistribution.from_table([P.names[a] for a in axes], table)


def condition(P: JointDistribution, var: str, value: int) -> JointDistribution:
    """Distribution of the remaining variables given var = value."""
    axis = P.index(var)
    if not 0 <= value < P.cards[axis]:
        raise DistributionError(f"value {value} out of range for {var!r}", "value")
    if P.arity == 1:
        raise DistributionError("conditioning would leave no variables")
    slab = np.take(P.table, value, axis=axis)
    mass = float(slab.sum())
    if mass <= 0:
        raise DistributionError(f"{var}={value} has zero probability", "value")
    names = [n for i, n in enumerate(P.names) if i != axis]
    return JointDistribution.from_table(names, slab / mass)


def product(P: JointDistribution, Q: JointDistribution) -> JointDistribution:
    """Independent product; P's variables first."""
    clash = set(P.names) & set(Q.names)
    if clash:
        raise DistributionError(f"label collision: {sorted(clash)}")
    return JointDistribution.from_table(P.names + Q.names, np.multiply.outer(P.table, Q.table))


def apply_channel(P: JointDistribution, var: str, ch: Channel) -> JointDistribution:
    """Push var through ch; its cardinality becomes ch.out_card."""
    axis = P.index(var)
    if ch.in_card != P.cards[axis]:
        raise ChannelError(
            f"channel expects {ch.in_card} inputs but {var!r} has cardinality {P.cards[axis]}"
        )
    table = np.tensordot(ch.matrix, P.table, axes=([1], [axis]))
    return JointDistribution.from_table(P.names, np.moveaxis(table, 0, axis))


def permute(P: JointDistribution, order: Labels) -> JointDistribution:
    """Reorder variables; order must name every variable once."""
    axes = axes_of(P, order)
    if len(axes) != P.arity:
        raise DistributionError(f"order {list(as_labels(order))} must list all variables")
    return JointDistribution.from_table([P.names[a] for a in axes], np.transpose(P.table, axes))


def rename(P: JointDistribution, mapping: Mapping[str, str]) -> JointDistribution:
    for old in mapping:
        P.index(old)
    return JointDistribution(tuple(mapping.get(n, n) for n in P.names), P.cards, P.probs)


def lookup_table(
    function: Callable[..., int], cards: Sequence[int]
) -> dict[Outcome, int]:
    """Total lookup table of function over the product of ranges."""
    return {
        tuple(values): int(function(*values))
        for values in iter_outcomes(cards)
    }


def relabel(
    P: JointDistribution,
    vars: Labels,
    f: Mapping[Outcome, int],
    new_name: str,
    new_card: Optional[int] = None,
) -> JointDistribution:
    """Replace vars by one variable carrying f of their joint value.

    Args:
        P: Input distribution
        vars: Variables to merge, in the order f's keys use
        f: Total lookup table from value tuples to the new value
        new_name: Label of the merged variable
        new_card: Cardinality of the merged variable (default max image + 1)

    Returns:
        Distribution with the merged variable at the position of the first selected one.
    """
    axes = axes_of(P, vars)
    if not axes:
        raise DistributionError("relabel needs at least one variable")
    sel_cards = [P.cards[a] for a in axes]
    index = np.empty(math.prod(sel_cards), dtype=int)
    for flat, values in enumerate(iter_outcomes(sel_cards)):
        if values not in f:
            raise DistributionError(f"relabel map is not total: missing {list(values)}", "f")
        index[flat] = int(f[values])
    if index.min() < 0:
        raise DistributionError("relabel images must be non-negative", "f")
    card = int(index.max()) + 1 if new_card is None else new_card
    if index.max() >= card:
        raise DistributionError(f"relabel image {index.max()} exceeds cardinality {card}", "f")

    rest = [i for i in range(P.arity) if i not in axes]
    moved = np.transpose(P.table, rest + list(axes))
    rest_shape = moved.shape[: len(rest)]
    flat = moved.reshape(rest_shape + (-1,))
    out = flat @ deterministic_channel(index.tolist(), card).matrix.T

    position = sum(1 for i in rest if i < min(axes))
    out = np.moveaxis(out, -1, position)
    names = [P.names[i] for i in rest]
    names.insert(position, new_name)
    if new_name in [P.names[i] for i in rest]:
        raise DistributionError(f"label collision: {new_name!r}")
    return JointDistribution.from_table(names, out)


def split_variable(
    P: JointDistribution,
    var: str,
    names: Sequence[str],
    cards: Sequence[int],
    table: Mapping[int, Outcome],
) -> JointDistribution:
    """Expand var into several variables through a bijection value -> tuple."""
    axis = P.index(var)
    card = P.cards[axis]
    if math.prod(cards) != card or len(names) != len(cards):
        raise DistributionError(f"split of {var!r} must cover exactly {card} values")
    images = [tuple(table[v]) for v in range(card) if v in table]
    if len(images) != card or len(set(images)) != card:
        raise DistributionError(f"split map for {var!r} must be a bijection", "table")
    for image in images:
        _check_outcome(image, cards)

    moved = np.moveaxis(P.table, axis, -1)
    out = np.zeros(moved.shape[:-1] + tuple(cards))
    for value in range(card):
        out[(Ellipsis,) + tuple(table[value])] = moved[..., value]
    width = len(cards)
    out = np.moveaxis(out, list(range(out.ndim - width, out.ndim)), list(range(axis, axis + width)))
    new_names = list(P.names[:axis]) + list(names) + list(P.names[axis + 1 :])
    return JointDistribution.from_table(new_names, out)


def is_product(
    P: JointDistribution,
    partition: Sequence[Labels],
    tol: float = DEFAULT_TOLERANCES.prob,
) -> bool:
    """True iff P equals the product of its block marginals within tol (ℓ∞)."""
    blocks = [as_labels(b) for b in partition]
    flat = [n for b in blocks for n in b]
    if any(not b for b in blocks) or sorted(flat) != sorted(P.names) or len(set(flat)) != len(flat):
        raise DistributionError("partition must cover every variable exactly once", "partition")
    joint = marginalize(P, blocks[0])
    for block in blocks[1:]:
        joint = product(joint, marginalize(P, block))
    return linf_distance(permute(joint, P.names), P) <= tol


# =============================================================================
# Doubly stochastic matrices
# =============================================================================


def doubly_stochastic_export(ch: Channel, column: int) -> np.ndarray:
    """Square doubly stochastic matrix whose row `column` is ch's column (zero padded).

    Rows are cyclic shifts of that vector, so every row and column sums to one.
    """
    if not 0 <= column < ch.in_card:
        raise ChannelError(f"column {column} out of range {ch.in_card}")
    size = max(ch.in_card, ch.out_card)
    vector = np.zeros(size)
    vector[: ch.out_card] = ch.matrix[:, column]
    return np.array([np.roll(vector, row - column) for row in range(size)])


def birkhoff_decomposition(
    matrix: np.ndarray, tol: float = 1e-12
) -> list[tuple[float, np.ndarray]]:
    """Convex decomposition of a doubly stochastic matrix into permutation matrices."""
    residual = np.array(matrix, dtype=float)
    n = residual.shape[0]
    if residual.shape != (n, n):
        raise ChannelError("Birkhoff decomposition needs a square matrix")
    margins = np.concatenate([residual.sum(axis=0), residual.sum(axis=1)])
    if residual.min() < -tol or np.abs(margins - 1).max() > 1e-9:
        raise ChannelError("matrix is not doubly stochastic")

    terms: list[tuple[float, np.ndarray]] = []
    while residual.max() > tol and len(terms) <= n * n:
        # a perfect matching inside the positive support always exists
        cost = np.where(residual > tol, -residual, n * n + 1.0)
        rows, cols = linear_sum_assignment(cost)
        weights = residual[rows, cols]
        if weights.min() <= tol:
            raise ChannelError("no permutation inside the support; matrix not doubly stochastic")
        weight = float(weights.min())
        perm = np.zeros((n, n))
        perm[rows, cols] = 1.0
        terms.append((weight, perm))
        residual = residual - weight * perm
        residual[np.abs(residual) < tol] = 0.0
    return terms


# =============================================================================
# Generators
# =============================================================================


def _check_probability(name: str, value: float) -> float:
    if not 0.0 <= value <= 1.0:
        raise DistributionError(f"{name}={value} must lie in [0, 1]", "params")
    return float(value)


def _expect(params: Sequence[float], count: int, family: str) -> list[float]:
    if len(params) != count:
        raise DistributionError(f"{family} takes {count} parameters, got {len(params)}", "params")
    return [float(p) for p in params]


def ghz_type(a: float) -> JointDistribution:
    a = _check_probability("a", a)
    return JointDistribution.from_points("XYZ", (2, 2, 2), {(0, 0, 0): a, (1, 1, 1): 1 - a})


def w_type(a: float, b: float) -> JointDistribution:
    a, b = _check_probability("a", a), _check_probability("b", b)
    if a + b > 1 + 1e-12:
        raise DistributionError(f"a + b = {a + b} exceeds 1", "params")
    c = max(0.0, 1 - a - b)
    return JointDistribution.from_points(
        "XYZ", (2, 2, 2), {(0, 0, 1): a, (0, 1, 0): b, (1, 0, 0): c}
    )


def ghz_w_mixture(p: float) -> JointDistribution:
    p = _check_probability("p", p)
    q = (1 - p) / 3
    return JointDistribution.from_points(
        "XYZ",
        (2, 2, 2),
        {(0, 0, 0): p / 2, (1, 1, 1): p / 2, (0, 0, 1): q, (0, 1, 0): q, (1, 0, 0): q},
    )


def w4(kind: Union[str, W4Kind], a: float, b: float, c: float, d: float) -> JointDistribution:
    kind = W4Kind(kind).value
    weights = [_check_probability(n, v) for n, v in zip("abcd", (a, b, c, d))]
    if abs(sum(weights) - 1) > DEFAULT_TOLERANCES.prob:
        raise DistributionError(f"a + b + c + d = {sum(weights)} must equal 1", "params")
    return JointDistribution.from_points(
        "XYZ", (2, 2, 2), dict(zip(W4_SUPPORTS[kind], weights))
    )


def chain_example(p0: float, q0: float) -> JointDistribution:
    """Two binary sources; Z records the pair (i, j) as 2i + j."""
    p = (_check_probability("p0", p0), 1 - p0)
    q = (_check_probability("q0", q0), 1 - q0)
    points = {(i, j, 2 * i + j): p[i] * q[j] for i in range(2) for j in range(2)}
    return JointDistribution.from_points("XYZ", (2, 2, 4), points)


def star_example(p1: float, p2: float, p3: float) -> JointDistribution:
    """Three binary leaves and a centre recording the triple as 4i1 + 2i2 + i3."""
    marginals = [(_check_probability(f"p{k}", v), 1 - v) for k, v in enumerate((p1, p2, p3), 1)]
    points = {}
    for i1, i2, i3 in itertools.product(range(2), repeat=3):
        mass = marginals[0][i1] * marginals[1][i2] * marginals[2][i3]
        points[(i1, i2, i3, 4 * i1 + 2 * i2 + i3)] = mass
    return JointDistribution.from_points(("X1", "X2", "X3", "Y"), (2, 2, 2, 8), points)


def triangle_example(p0: float, q0: float, r0: float) -> JointDistribution:
    """x = (i, j), y = (j, k), z = (k, i), each pair encoded as 2u + v."""
    p = (_check_probability("p0", p0), 1 - p0)
    q = (_check_probability("q0", q0), 1 - q0)
    r = (_check_probability("r0", r0), 1 - r0)
    points = {}
    for i, j, k in itertools.product(range(2), repeat=3):
        key = (2 * i + j, 2 * j + k, 2 * k + i)
        points[key] = points.get(key, 0.0) + p[i] * q[j] * r[k]
    return JointDistribution.from_points("XYZ", (4, 4, 4), points)


def generate(
    family: Union[str, Family],
    params: Sequence[float] = (),
    kind: Optional[Union[str, W4Kind]] = None,
) -> JointDistribution:
    """Build a named distribution family.

    Args:
        family: Family name (see Family)
        params: Real parameters of the family
        kind: Support pattern, only for the w4 family

    Returns:
        The family member as a JointDistribution
    """
    try:
        family = Family(family)
    except ValueError:
        raise UnsupportedFamilyError(f"unknown family {family!r}") from None
    name = family.value
    if family is Family.FIG1:
        _expect(params, 0, name)
        return JointDistribution.from_points(
            "XYZ", (2, 2, 2),
            {(0, 0, 0): 0.25, (0, 1, 1): 0.25, (1, 0, 1): 0.25, (1, 1, 0): 0.25},
        )
    if family is Family.EQ11:
        _expect(params, 0, name)
        return JointDistribution.from_points(
            ("X", "Y", "Z1", "Z2"), (2, 2, 2, 2),
            {(0, 0, 0, 0): 0.25, (0, 1, 0, 1): 0.25, (1, 0, 1, 0): 0.25, (1, 1, 1, 1): 0.25},
        )
    if family is Family.EQ14:
        _expect(params, 0, name)
        support = [(0, 0, 0), (0, 1, 1), (1, 0, 2), (1, 1, 3),
                   (2, 2, 0), (2, 3, 1), (3, 2, 2), (3, 3, 3)]
        return JointDistribution.from_points("XYZ", (4, 4, 4), {s: 0.125 for s in support})
    if family is Family.GHZ_TYPE:
        return ghz_type(*_expect(params, 1, name))
    if family is Family.W_TYPE:
        return w_type(*_expect(params, 2, name))
    if family is Family.GHZ_W_MIXTURE:
        return ghz_w_mixture(*_expect(params, 1, name))
    if family is Family.W4:
        if kind is None:
            raise DistributionError("w4 needs a kind (EE0a..EE0f)", "kind")
        if str(getattr(kind, "value", kind)) not in W4_SUPPORTS:
            raise UnsupportedFamilyError(f"unknown w4 kind {kind!r}")
        return w4(kind, *_expect(params, 4, name))
    if family is Family.CHAIN_EXAMPLE:
        return chain_example(*_expect(params, 2, name))
    if family is Family.STAR_EXAMPLE:
        return star_example(*_expect(params, 3, name))
    return triangle_example(*_expect(params, 3, name))


# =============================================================================
# Random samplers
# =============================================================================


def _random_simplex(rng: np.random.Generator, size: int) -> np.ndarray:
    return rng.dirichlet(np.ones(size))


def random_distribution(
    rng: np.random.Generator, cards: Sequence[int], names: Sequence[str] = ("X", "Y", "Z")
) -> JointDistribution:
    """Dirichlet(1) draw over the full table."""
    table = _random_simplex(rng, math.prod(cards)).reshape(tuple(cards))
    return JointDistribution.from_table(tuple(names), table)


def random_markov_chain(rng: np.random.Generator, max_card: int = 4) -> JointDistribution:
    """X -> Y -> Z with random alphabets in [2, max_card] and random kernels."""
    cx, cy, cz = rng.integers(2, max_card + 1, size=3)
    px = _random_simplex(rng, cx)
    y_given_x = rng.dirichlet(np.ones(cy), size=cx)
    z_given_y = rng.dirichlet(np.ones(cz), size=cy)
    table = px[:, None, None] * y_given_x[:, :, None] * z_given_y[None, :, :]
    return JointDistribution.from_table("XYZ", table)


def random_case_one(
    rng: np.random.Generator, cards: Sequence[int] = (2, 2, 2)
) -> JointDistribution:
    """p_x p_y Q_xy(z) with random marginals and random conditional tables."""
    cx, cy, cz = cards
    px, py = _random_simplex(rng, cx), _random_simplex(rng, cy)
    q = rng.dirichlet(np.ones(cz), size=(cx, cy))
    return JointDistribution.from_table("XYZ", px[:, None, None] * py[None, :, None] * q)


def random_triangle(
    rng: np.random.Generator, latent_card: int = 3, out_card: int = 2
) -> JointDistribution:
    """Classical triangle: independent uniform latents, deterministic node maps.

    alpha is shared by (X, Y), beta by (Y, Z), gamma by (Z, X).
    """
    fx = rng.integers(0, out_card, size=(latent_card, latent_card))
    fy = rng.integers(0, out_card, size=(latent_card, latent_card))
    fz = rng.integers(0, out_card, size=(latent_card, latent_card))
    table = np.zeros((out_card,) * 3)
    weight = 1.0 / latent_card**3
    for alpha, beta, gamma in itertools.product(range(latent_card), repeat=3):
        table[fx[alpha, gamma], fy[alpha, beta], fz[beta, gamma]] += weight
    return JointDistribution.from_table("XYZ", table)


# =============================================================================
# File I/O
# =============================================================================


def to_document(P: JointDistribution) -> DistributionDoc:
    """Sparse document listing positive entries in row-major order."""
    return DistributionDoc(
        variables=list(P.names),
        cardinalities=list(P.cards),
        entries=[EntryDoc(outcome=list(o), p=float(P.table[o])) for o in P.support()],
    )


def from_document(doc: DistributionDoc) -> JointDistribution:
    """Validate a document and build the distribution."""
    if len(doc.variables) != len(doc.cardinalities) or not doc.variables:
        raise DistributionError("variables and cardinalities must have equal non-zero length",
                                "cardinalities")
    if math.prod(doc.cardinalities) > 2**24:
        raise DistributionError("distribution too large", "cardinalities")
    if any(c < 1 for c in doc.cardinalities):
        raise DistributionError("cardinalities must be positive", "cardinalities")
    table = np.zeros(tuple(doc.cardinalities))
    seen: set[Outcome] = set()
    for number, entry in enumerate(doc.entries):
        field = f"entries[{number}]"
        outcome = tuple(entry.outcome)
        try:
            _check_outcome(outcome, doc.cardinalities)
        except DistributionError as e:
            raise DistributionError(e.message, field) from None
        if outcome in seen:
            raise DistributionError(f"duplicate outcome {list(outcome)}", field)
        if entry.p < 0 or not math.isfinite(entry.p):
            raise DistributionError(f"invalid probability {entry.p!r}", field)
        seen.add(outcome)
        table[outcome] = entry.p
    return JointDistribution(tuple(doc.variables), tuple(doc.cardinalities), table.ravel())


def dumps_distribution(P: JointDistribution) -> str:
    return to_document(P).model_dump_json(indent=2)


def loads_distribution(text: str) -> JointDistribution:
    try:
        doc = DistributionDoc.model_validate_json(text)
    except ValidationError as e:
        first = e.errors()[0]
        location = ".".join(str(part) for part in first["loc"]) or "document"
        raise DistributionError(first["msg"], location) from None
    return from_document(doc)


def read_distribution(path: Union[str, Path]) -> JointDistribution:
    """Read a distribution JSON file; '-' reads standard input."""
    if str(path) == "-":
        return loads_distribution(sys.stdin.read())
    try:
        text = Path(path).read_text()
    except OSError as e:
        raise DistributionError(f"cannot read {path}: {e.strerror}", "path") from None
    return loads_distribution(text)


def write_distribution(P: JointDistribution, path: Union[str, Path]) -> None:
    """Write a distribution JSON file; '-' writes standard output."""
    text = dumps_distribution(P) + "\n"
    if str(path) == "-":
        sys.stdout.write(text)
    else:
        Path(path).write_text(text)
    logger.debug("wrote distribution over %s to %s", list(P.names), path)


def iter_outcomes(cards: Iterable[int]) -> Iterable[Outcome]:
    """All outcome tuples in row-major order."""
    return itertools.product(*(range(c) for c in cards))
