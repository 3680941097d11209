"""Shannon information quantities in bits."""

import itertools
import math
from collections.abc import Mapping, Sequence
from typing import Optional

import numpy as np
from scipy.special import entr

from .config import DEFAULT_TOLERANCES
from .models import DistributionError
from .probtab import JointDistribution, Labels, as_labels, axes_of

Bits = float

LN2 = math.log(2)


def _table_entropy(table: np.ndarray) -> Bits:
    return float(entr(np.asarray(table, dtype=float)).sum() / LN2)


def binary_entropy(a: float) -> Bits:
    """h(a) = -a log a - (1-a) log(1-a)."""
    return _table_entropy(np.array([a, 1.0 - a]))


def _marginal_table(P: JointDistribution, labels: Sequence[str]) -> np.ndarray:
    axes = axes_of(P, labels)
    dropped = tuple(i for i in range(P.arity) if i not in axes)
    return P.table.sum(axis=dropped) if dropped else P.table


def entropy(P: JointDistribution, subset: Labels) -> Bits:
    """Joint entropy of the marginal on subset; 0 log 0 = 0."""
    labels = as_labels(subset)
    if not labels:
        raise DistributionError("entropy needs a non-empty variable set")
    return _table_entropy(_marginal_table(P, labels))


def _joint_entropy(P: JointDistribution, labels: Sequence[str]) -> Bits:
    # H of the empty set is zero
    return entropy(P, labels) if labels else 0.0


def _disjoint(*groups: tuple[str, ...]) -> None:
    seen: set[str] = set()
    for group in groups:
        overlap = seen & set(group)
        if overlap:
            raise DistributionError(f"variable sets overlap on {sorted(overlap)}")
        seen |= set(group)


def mutual_information(P: JointDistribution, A: Labels, B: Labels) -> Bits:
    """I(A;B) = H(A) + H(B) - H(A,B)."""
    a, b = as_labels(A), as_labels(B)
    if not a or not b:
        raise DistributionError("mutual information needs non-empty sets")
    _disjoint(a, b)
    return entropy(P, a) + entropy(P, b) - entropy(P, a + b)


def conditional_mutual_information(
    P: JointDistribution, A: Labels, B: Labels, C: Labels = ()
) -> Bits:
    """I(A;B|C) = H(A,C) + H(B,C) - H(C) - H(A,B,C)."""
    a, b, c = as_labels(A), as_labels(B), as_labels(C)
    if not a or not b:
        raise DistributionError("conditional mutual information needs non-empty A and B")
    _disjoint(a, b, c)
    if not c:
        return mutual_information(P, a, b)
    return (
        entropy(P, a + c) + entropy(P, b + c) - entropy(P, c) - entropy(P, a + b + c)
    )


def _default_triple(P: JointDistribution) -> tuple[str, str, str]:
    if P.arity != 3:
        raise DistributionError(
            f"tripartite quantities need three variables, got {list(P.names)}"
        )
    return P.names[0], P.names[1], P.names[2]


def tripartite_information(
    P: JointDistribution,
    X: Optional[Labels] = None,
    Y: Optional[Labels] = None,
    Z: Optional[Labels] = None,
) -> Bits:
    """I(X;Y;Z) = I(X;Y) - I(X;Y|Z); defaults to the three variables of P."""
    given = [v is not None for v in (X, Y, Z)]
    if not any(given):
        X, Y, Z = _default_triple(P)
    elif not all(given):
        raise DistributionError("pass all of X, Y and Z or none of them")
    x, y, z = as_labels(X), as_labels(Y), as_labels(Z)
    if not z:
        raise DistributionError("tripartite information needs a non-empty Z")
    return mutual_information(P, x, y) - conditional_mutual_information(P, x, y, z)


def multivariate_information(
    P: JointDistribution, blocks: Sequence[Labels], cond: Labels = ()
) -> Bits:
    """Alternating inclusion-exclusion sum of (conditional) joint entropies.

    Odd-sized unions of blocks enter with a plus sign, even-sized with a minus
    sign; every entropy is conditioned on cond via H(S|C) = H(S,C) - H(C).
    """
    groups = [as_labels(b) for b in blocks]
    c = as_labels(cond)
    if not groups or any(not g for g in groups):
        raise DistributionError("multivariate information needs non-empty blocks")
    _disjoint(*groups, c)
    h_cond = _joint_entropy(P, c)
    total = 0.0
    for size in range(1, len(groups) + 1):
        sign = 1.0 if size % 2 else -1.0
        for chosen in itertools.combinations(groups, size):
            union = tuple(n for g in chosen for n in g)
            total += sign * (_joint_entropy(P, union + c) - h_cond)
    return total


def network_information(
    P: JointDistribution, blocks: Sequence[Labels], target: Labels
) -> Bits:
    """I(X1;...;Xn;Y) = I(X1;...;Xn) - I(X1;...;Xn|Y)."""
    return multivariate_information(P, blocks) - multivariate_information(P, blocks, target)


def entropy_vector(P: JointDistribution) -> dict[frozenset[str], Bits]:
    """Entropies of every non-empty subset of P's variables."""
    vector: dict[frozenset[str], Bits] = {}
    for size in range(1, P.arity + 1):
        for subset in itertools.combinations(P.names, size):
            vector[frozenset(subset)] = entropy(P, subset)
    return vector


def is_polymatroid(
    vector: Mapping[frozenset[str], Bits], tol: float = DEFAULT_TOLERANCES.info
) -> bool:
    """Check the elemental Shannon inequalities on an entropy vector.

    Monotonicity: H(N) >= H(N - i). Submodularity: I(i;j|K) >= 0 for all
    i != j and K within the remaining variables.
    """
    ground = frozenset().union(*vector)

    def h(s: frozenset[str]) -> float:
        return vector[s] if s else 0.0

    for i in ground:
        if h(ground) - h(ground - {i}) < -tol:
            return False
    for i, j in itertools.combinations(sorted(ground), 2):
        rest = sorted(ground - {i, j})
        for size in range(len(rest) + 1):
            for k in itertools.combinations(rest, size):
                base = frozenset(k)
                value = h(base | {i}) + h(base | {j}) - h(base | {i, j}) - h(base)
                if value < -tol:
                    return False
    return True


def seven_term_information(P: JointDistribution) -> Bits:
    """H(X)+H(Y)+H(Z)-H(X,Y)-H(X,Z)-H(Y,Z)+H(X,Y,Z) over P's three variables."""
    x, y, z = _default_triple(P)
    return (
        entropy(P, x) + entropy(P, y) + entropy(P, z)
        - entropy(P, (x, y)) - entropy(P, (x, z)) - entropy(P, (y, z))
        + entropy(P, (x, y, z))
    )
