"""Bayesian DAGs from Markovian parents and Markov compatibility checks."""

import itertools
from collections.abc import Iterable, Sequence
from dataclasses import dataclass, field
from typing import Union

import numpy as np

from .config import DEFAULT_TOLERANCES
from .log import get_logger
from .models import DistributionError
from .probtab import JointDistribution, Labels, as_labels, axes_of
from .schemas import DagDoc
from .shannon import conditional_mutual_information

logger = get_logger(__name__)


@dataclass(frozen=True)
class Dag:
    """Directed acyclic graph over variable labels."""

    nodes: tuple[str, ...]
    edges: frozenset[tuple[str, str]] = field(default_factory=frozenset)

    def __post_init__(self) -> None:
        object.__setattr__(self, "nodes", tuple(self.nodes))
        object.__setattr__(self, "edges", frozenset(tuple(e) for e in self.edges))
        known = set(self.nodes)
        if len(known) != len(self.nodes):
            raise DistributionError(f"duplicate DAG nodes {list(self.nodes)}", "nodes")
        for parent, child in self.edges:
            if parent not in known or child not in known:
                raise DistributionError(f"edge {parent}->{child} uses an unknown node", "edges")
            if parent == child:
                raise DistributionError(f"self-loop on {parent}", "edges")
        self.topological_order()

    def parents(self, node: str) -> tuple[str, ...]:
        """Parents of node, in node order."""
        return tuple(n for n in self.nodes if (n, node) in self.edges)

    def topological_order(self) -> tuple[str, ...]:
        """Kahn's algorithm; raises on a directed cycle."""
        indegree = {n: len(self.parents(n)) for n in self.nodes}
        ready = [n for n in self.nodes if indegree[n] == 0]
        order: list[str] = []
        while ready:
            node = ready.pop(0)
            order.append(node)
            for parent, child in sorted(self.edges):
                if parent == node:
                    indegree[child] -= 1
                    if indegree[child] == 0:
                        ready.append(child)
        if len(order) != len(self.nodes):
            raise DistributionError("graph has a directed cycle", "edges")
        return tuple(order)

    def to_document(self) -> DagDoc:
        position = {n: i for i, n in enumerate(self.nodes)}
        edges = sorted(self.edges, key=lambda e: (position[e[1]], position[e[0]]))
        return DagDoc(nodes=list(self.nodes), edges=[list(e) for e in edges])

    @classmethod
    def from_document(cls, doc: DagDoc) -> "Dag":
        if any(len(e) != 2 for e in doc.edges):
            raise DistributionError("edges must be [parent, child] pairs", "edges")
        return cls(tuple(doc.nodes), frozenset((e[0], e[1]) for e in doc.edges))


def _check_ordering(P: JointDistribution, ordering: Labels) -> tuple[str, ...]:
    order = as_labels(ordering)
    if sorted(order) != sorted(P.names) or len(set(order)) != len(order):
        raise DistributionError(
            f"ordering {list(order)} must be a permutation of {list(P.names)}", "ordering"
        )
    return order


def _conditional(P: JointDistribution, given: Sequence[str], target: str) -> np.ndarray:
    """p(target | given) as an array over (given..., target); zero where p(given) = 0."""
    axes = axes_of(P, tuple(given) + (target,))
    dropped = tuple(i for i in range(P.arity) if i not in axes)
    table = P.table.sum(axis=dropped) if dropped else P.table
    table = np.transpose(table, np.argsort(np.argsort(axes)))
    mass = table.sum(axis=-1, keepdims=True)
    with np.errstate(invalid="ignore", divide="ignore"):
        cond = np.where(mass > 0, table / np.where(mass > 0, mass, 1.0), 0.0)
    return cond


def markovian_parents(
    P: JointDistribution,
    ordering: Labels,
    j: Union[int, str],
    tol: float = DEFAULT_TOLERANCES.prob,
) -> tuple[str, ...]:
    """Minimal predecessor set S with p(x_j | S) = p(x_j | all predecessors).

    Args:
        P: Joint distribution
        ordering: Permutation of P's variables
        j: 1-based position in ordering, or the variable label
        tol: Tolerance on conditional probabilities

    Returns:
        Parent labels in ordering order. Candidates are tried by increasing size,
        then lexicographically by label; the first passing set is returned.
    """
    order = _check_ordering(P, ordering)
    if isinstance(j, str):
        if j not in order:
            raise DistributionError(f"unknown variable {j!r}", "j")
        position = order.index(j) + 1
    else:
        position = int(j)
    if not 1 <= position <= len(order):
        raise DistributionError(f"index {j} outside 1..{len(order)}", "j")
    target = order[position - 1]
    predecessors = order[: position - 1]
    if not predecessors:
        return ()

    full = _conditional(P, predecessors, target)
    given_mass = _marginal_mass(P, predecessors)
    positive = given_mass > 0

    for size in range(len(predecessors) + 1):
        for subset in itertools.combinations(sorted(predecessors), size):
            candidate = tuple(n for n in predecessors if n in subset)
            if _matches(P, predecessors, candidate, target, full, positive, tol):
                logger.debug("parents of %s: %s", target, list(candidate))
                return candidate
    return predecessors


def _marginal_mass(P: JointDistribution, labels: Sequence[str]) -> np.ndarray:
    axes = axes_of(P, labels)
    dropped = tuple(i for i in range(P.arity) if i not in axes)
    table = P.table.sum(axis=dropped) if dropped else P.table
    return np.transpose(table, np.argsort(np.argsort(axes)))


def _matches(
    P: JointDistribution,
    predecessors: Sequence[str],
    candidate: Sequence[str],
    target: str,
    full: np.ndarray,
    positive: np.ndarray,
    tol: float,
) -> bool:
    reduced = _conditional(P, candidate, target)
    # broadcast p(target | candidate) onto the predecessor grid
    shape = [P.card(n) if n in candidate else 1 for n in predecessors] + [P.card(target)]
    expanded = np.broadcast_to(reduced.reshape(shape), full.shape)
    gap = np.abs(expanded - full).max(axis=-1)
    return bool(np.all(gap[positive] <= tol))


def build_dag(
    P: JointDistribution, ordering: Labels, tol: float = DEFAULT_TOLERANCES.prob
) -> Dag:
    """Draw an edge from every Markovian parent to its child."""
    order = _check_ordering(P, ordering)
    edges = set()
    for position, child in enumerate(order, start=1):
        for parent in markovian_parents(P, order, position, tol):
            edges.add((parent, child))
    return Dag(tuple(P.names), frozenset(edges))


def factorized(P: JointDistribution, g: Dag) -> np.ndarray:
    """Table of prod_j p(x_j | pa(x_j)) in P's axis order."""
    if sorted(g.nodes) != sorted(P.names):
        raise DistributionError(
            f"DAG nodes {list(g.nodes)} do not match variables {list(P.names)}", "nodes"
        )
    result = np.ones(P.cards)
    for child in P.names:
        parents = g.parents(child)
        cond = _conditional(P, parents, child)
        labels = parents + (child,)
        # move to P's axis order and broadcast over the remaining axes
        order = np.argsort([P.index(n) for n in labels])
        cond = np.transpose(cond, order)
        shape = [P.cards[i] if P.names[i] in labels else 1 for i in range(P.arity)]
        result = result * cond.reshape(shape)
    return result


def is_markov_compatible(
    P: JointDistribution, g: Dag, tol: float = DEFAULT_TOLERANCES.prob
) -> bool:
    """True iff p = prod_j p(x_j | pa(x_j)) for every outcome within tol."""
    return bool(np.abs(factorized(P, g) - P.table).max() <= tol)


def is_markov_chain(
    P: JointDistribution, ordering: Iterable[str], tol: float = DEFAULT_TOLERANCES.info
) -> bool:
    """True iff I(A;C|B) <= tol for ordering (A, B, C)."""
    names = tuple(ordering)
    if len(names) != 3 or len(set(names)) != 3:
        raise DistributionError("a Markov chain check names exactly three variables", "ordering")
    a, b, c = names
    return conditional_mutual_information(P, a, c, b) <= tol
