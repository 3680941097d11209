"""Pydantic schemas for negshannon JSON documents."""

from typing import Optional

from pydantic import BaseModel, Field


class EntryDoc(BaseModel):
    """One listed outcome of a distribution."""
    outcome: list[int]
    p: float


class DistributionDoc(BaseModel):
    """Distribution file: unlisted outcomes are zero."""
    variables: list[str]
    cardinalities: list[int]
    entries: list[EntryDoc] = Field(default_factory=list)


class DagDoc(BaseModel):
    """Directed acyclic graph over variable labels."""
    nodes: list[str]
    edges: list[list[str]] = Field(default_factory=list)


class InfoReportDoc(BaseModel):
    """Entropies and information quantities of a distribution."""
    variables: list[str]
    entropies: dict[str, float]
    mutual_information: dict[str, float] = Field(default_factory=dict)
    conditional_mutual_information: dict[str, float] = Field(default_factory=dict)
    tripartite_information: Optional[float] = None
    case: Optional[str] = None
    polymatroid: bool = True


class WitnessReportDoc(BaseModel):
    """Inequality witness report for a tripartite distribution."""
    case: str
    tripartite_information: float
    slack19: float
    slack20: float
    slack22: float
    slack23: float
    finner_ok: bool
    finner13_ok: bool
    verdicts: dict[str, str]
    excluded_by: dict[str, list[str]] = Field(default_factory=dict)


class ImplicationDoc(BaseModel):
    """Support implication copy = value => original = value."""
    copy_variable: str
    copy_value: int
    target: str
    target_value: int


class CertificateDoc(BaseModel):
    """Inflation incompatibility certificate."""
    verdict: str = "incompatible"
    independence: str
    assignment: dict[str, int]
    forced_event: dict[str, int]
    marginal: list[str]
    probability: float
    implications: list[ImplicationDoc] = Field(default_factory=list)


class InconclusiveDoc(BaseModel):
    """No certificate found."""
    verdict: str = "inconclusive"
    independence: str
    reason: str


class ChainPlanDoc(BaseModel):
    """Chain realization plan with its round-trip error."""
    p_xz1: DistributionDoc
    p_yz2: DistributionDoc
    g: list[list[float]]
    round_trip_error: float


class ExtremumDoc(BaseModel):
    """Result of an extremization."""
    direction: str
    value: float
    argument: list[float]
    trace: list[float]
    post_channel: Optional[str] = None
    delta: Optional[float] = None


class ThresholdDoc(BaseModel):
    """Mixture threshold scan result."""
    kind: str
    threshold: float
    binding: Optional[str] = None


class SourceDoc(BaseModel):
    """Pure source state."""
    dims: list[int]
    amplitudes: list[list[float]]


class PartyDoc(BaseModel):
    """Party wiring and measurement."""
    name: str
    slots: list[list[int]]
    elements: list[list[list[list[float]]]]


class NetworkSpecDoc(BaseModel):
    """Quantum network: sources, party slots and measurements."""
    sources: list[SourceDoc]
    parties: list[PartyDoc]


class CheckDoc(BaseModel):
    """One line of the examples report."""
    item: int
    name: str
    passed: bool
    detail: str


class ExamplesReportDoc(BaseModel):
    """Pass/fail report of the examples runner."""
    checks: list[CheckDoc]
    passed: int
    failed: int
