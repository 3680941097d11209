"""Support-based spiral inflation certificates for the triangle network.

Six copy variables X1, Y1, Z1, X2, Y2, Z2 each share one bipartite marginal
with an original variable. When the original marginal's support pins the
partner's value, a copy value implies an original value. A set of copy values
with positive probability that forces a zero-probability event on (X, Y, Z)
certifies that no triangle network produces P.
"""

import itertools
from dataclasses import dataclass, field
from typing import Optional, Union

import numpy as np

from .config import DEFAULT_TOLERANCES
from .log import get_logger
from .models import DistributionError, Independence
from .probtab import JointDistribution, marginalize
from .schemas import CertificateDoc, ImplicationDoc, InconclusiveDoc

logger = get_logger(__name__)

COPIES = ("X1", "Y1", "Z1", "X2", "Y2", "Z2")

# Copies fed by a common source in the spiral wiring
SHARED_SOURCE = (frozenset({"Z1", "X2"}), frozenset({"X1", "Y2"}), frozenset({"Y1", "Z2"}))


@dataclass(frozen=True)
class MarginalEquality:
    """(copy, partner) in the inflation has the marginal of (role, partner) in P.

    Roles and partners are positions 0, 1, 2 of P's variables (X, Y, Z).
    """

    copy: str
    role: int
    partner: int


# (X, Z1) ~ (X, Z), (Y1, Z) ~ (Y, Z), (X1, Y) ~ (X, Y),
# (Y, Z2) ~ (Y, Z), (X, Y2) ~ (X, Y), (X2, Z) ~ (X, Z)
CONSTRAINTS = (
    MarginalEquality("X1", role=0, partner=1),
    MarginalEquality("Y1", role=1, partner=2),
    MarginalEquality("Z1", role=2, partner=0),
    MarginalEquality("X2", role=0, partner=2),
    MarginalEquality("Y2", role=1, partner=0),
    MarginalEquality("Z2", role=2, partner=1),
)


@dataclass(frozen=True)
class Implication:
    """copy = copy_value forces the original variable target = target_value."""

    copy: str
    copy_value: int
    target: str
    target_value: int

    def to_document(self) -> ImplicationDoc:
        return ImplicationDoc(
            copy_variable=self.copy,
            copy_value=self.copy_value,
            target=self.target,
            target_value=self.target_value,
        )


@dataclass(frozen=True)
class Certificate:
    """Copy values with positive probability forcing a zero-probability event."""

    independence: Independence
    assignment: dict[str, int]
    forced: dict[str, int]
    probability: float
    implications: tuple[Implication, ...] = field(default_factory=tuple)

    @property
    def marginal(self) -> tuple[str, ...]:
        return tuple(self.forced)

    def to_document(self) -> CertificateDoc:
        return CertificateDoc(
            independence=self.independence.value,
            assignment=dict(self.assignment),
            forced_event=dict(self.forced),
            marginal=list(self.marginal),
            probability=self.probability,
            implications=[i.to_document() for i in self.implications],
        )


@dataclass(frozen=True)
class Inconclusive:
    """No certificate exists under the chosen independence premise."""

    independence: Independence
    reason: str

    def to_document(self) -> InconclusiveDoc:
        return InconclusiveDoc(independence=self.independence.value, reason=self.reason)


def _check_binary(P: JointDistribution) -> None:
    if P.arity != 3 or any(c != 2 for c in P.cards):
        raise DistributionError(
            f"inflation certificates need three binary variables, got cards {list(P.cards)}",
            "cardinalities",
        )


def _pair_table(P: JointDistribution, role: int, partner: int) -> np.ndarray:
    """Marginal of (role, partner) with role on axis 0."""
    return marginalize(P, (P.names[role], P.names[partner])).table


def extract_implications(
    P: JointDistribution, tol: float = DEFAULT_TOLERANCES.prob
) -> list[Implication]:
    """Implications forced by the supports of P's bipartite marginals.

    For each copy and each value v it takes with positive probability, an
    implication is emitted when the partner's support given role = v is a
    single point.
    """
    _check_binary(P)
    implications = []
    for constraint in CONSTRAINTS:
        table = _pair_table(P, constraint.role, constraint.partner)
        for value in (0, 1):
            row = table[value]
            if row.sum() <= tol:
                continue
            support = np.flatnonzero(row > tol)
            if len(support) == 1:
                implications.append(
                    Implication(
                        copy=constraint.copy,
                        copy_value=value,
                        target=P.names[constraint.partner],
                        target_value=int(support[0]),
                    )
                )
    return implications


def _copy_marginals(P: JointDistribution) -> dict[str, np.ndarray]:
    return {
        c.copy: marginalize(P, P.names[c.role]).table for c in CONSTRAINTS
    }


def _violates_sources(assignment: dict[str, int]) -> bool:
    return any(pair <= assignment.keys() for pair in SHARED_SOURCE)


def _force(
    assignment: dict[str, int],
    rules: dict[tuple[str, int], Implication],
) -> Optional[tuple[dict[str, int], list[Implication]]]:
    """Forced original values, or None on a conflict."""
    forced: dict[str, int] = {}
    used = []
    for copy, value in assignment.items():
        rule = rules.get((copy, value))
        if rule is None:
            continue
        if forced.get(rule.target, rule.target_value) != rule.target_value:
            return None
        forced[rule.target] = rule.target_value
        used.append(rule)
    return forced, used


def _event_probability(P: JointDistribution, event: dict[str, int]) -> float:
    names = tuple(n for n in P.names if n in event)
    table = marginalize(P, names).table
    return float(table[tuple(event[n] for n in names)])


def _ordered(P: JointDistribution, event: dict[str, int]) -> dict[str, int]:
    return {n: event[n] for n in P.names if n in event}


def certify_triangle_incompatibility(
    P: JointDistribution,
    independence: Union[str, Independence] = Independence.FULL,
    tol: float = DEFAULT_TOLERANCES.prob,
) -> Union[Certificate, Inconclusive]:
    """Enumerate partial copy assignments for a support contradiction.

    Copies are visited in the order X1, Y1, Z1, X2, Y2, Z2, each unset, then
    1, then 0. The first hit is extended by every further copy value whose
    implication agrees with the forced event.

    Args:
        P: Binary tripartite distribution
        independence: "full" treats all six copies as independent; "sources"
            never sets two copies that share a source
        tol: Probabilities at or below tol count as zero

    Returns:
        A Certificate, or Inconclusive when no assignment works
    """
    _check_binary(P)
    mode = Independence(independence)
    implications = extract_implications(P, tol)
    rules = {(i.copy, i.copy_value): i for i in implications}
    marginals = _copy_marginals(P)

    for values in itertools.product((None, 1, 0), repeat=len(COPIES)):
        assignment = {c: v for c, v in zip(COPIES, values) if v is not None}
        if not assignment:
            continue
        if any(marginals[c][v] <= tol for c, v in assignment.items()):
            continue
        if mode is Independence.SOURCES and _violates_sources(assignment):
            continue
        result = _force(assignment, rules)
        if result is None or not result[0]:
            continue
        forced, _ = result
        probability = _event_probability(P, forced)
        if probability > tol:
            continue

        assignment = _saturate(assignment, forced, rules, marginals, mode, tol)
        _, used = _force(assignment, rules) or (forced, [])
        certificate = Certificate(
            independence=mode,
            assignment=assignment,
            forced=_ordered(P, forced),
            probability=probability,
            implications=tuple(used),
        )
        logger.debug("certificate %s forces %s", assignment, certificate.forced)
        return certificate

    reason = (
        f"no copy assignment forces a zero-probability event "
        f"({len(implications)} implications, independence={mode.value})"
    )
    return Inconclusive(independence=mode, reason=reason)


def _saturate(
    assignment: dict[str, int],
    forced: dict[str, int],
    rules: dict[tuple[str, int], Implication],
    marginals: dict[str, np.ndarray],
    mode: Independence,
    tol: float,
) -> dict[str, int]:
    extended = dict(assignment)
    for copy in COPIES:
        if copy in extended:
            continue
        for value in (1, 0):
            rule = rules.get((copy, value))
            if rule is None or forced.get(rule.target) != rule.target_value:
                continue
            if marginals[copy][value] <= tol:
                continue
            candidate = {**extended, copy: value}
            if mode is Independence.SOURCES and _violates_sources(candidate):
                continue
            extended = candidate
            break
    return {c: extended[c] for c in COPIES if c in extended}


def validate_certificate(
    P: JointDistribution,
    certificate: Certificate,
    tol: float = DEFAULT_TOLERANCES.prob,
) -> bool:
    """Re-derive every field of a certificate from P."""
    _check_binary(P)
    if not certificate.assignment or not set(certificate.assignment) <= set(COPIES):
        return False
    marginals = _copy_marginals(P)
    if any(marginals[c][v] <= tol for c, v in certificate.assignment.items()):
        return False
    if certificate.independence is Independence.SOURCES and _violates_sources(
        certificate.assignment
    ):
        return False
    rules = {(i.copy, i.copy_value): i for i in extract_implications(P, tol)}
    result = _force(certificate.assignment, rules)
    if result is None:
        return False
    forced, used = result
    if _ordered(P, forced) != certificate.forced:
        return False
    if set(used) != set(certificate.implications):
        return False
    probability = _event_probability(P, forced)
    return probability <= tol and abs(probability - certificate.probability) <= tol
