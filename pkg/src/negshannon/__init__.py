"""negshannon - Network explanations for negative tripartite Shannon information."""

__version__ = "0.1.0"
__author__ = "negshannon Contributors"

from .bayesnet import Dag, build_dag, is_markov_compatible, markovian_parents
from .config import DEFAULT_OPTIMIZER, FAST_OPTIMIZER, OptimizerConfig, Tolerances
from .inflation import Certificate, Inconclusive, certify_triangle_incompatibility
from .models import (
    CaseLabel,
    ChannelError,
    ConfigError,
    DistributionError,
    MeasurementError,
    NegShannonError,
    NotApplicableError,
    SearchBoundError,
    UnsupportedFamilyError,
)
from .optimize import (
    ExtremumResult,
    delta_indicator,
    extremize_under_local_channels,
    i_min_network,
)
from .probtab import Channel, JointDistribution, generate
from .quantum import MeasurementSet, NetworkSpec, PureState, born_distribution
from .shannon import (
    conditional_mutual_information,
    entropy,
    multivariate_information,
    mutual_information,
    tripartite_information,
)
from .witness import (
    WitnessReport,
    chain_compatible,
    classify_case,
    evaluate_inequalities,
    scan_mixture_threshold,
    triangle_decomposition_search,
)

__all__ = [
    "__version__",
    "CaseLabel",
    "Certificate",
    "Channel",
    "ChannelError",
    "ConfigError",
    "DEFAULT_OPTIMIZER",
    "Dag",
    "DistributionError",
    "ExtremumResult",
    "FAST_OPTIMIZER",
    "Inconclusive",
    "JointDistribution",
    "MeasurementError",
    "MeasurementSet",
    "NegShannonError",
    "NetworkSpec",
    "NotApplicableError",
    "OptimizerConfig",
    "PureState",
    "SearchBoundError",
    "Tolerances",
    "UnsupportedFamilyError",
    "WitnessReport",
    "born_distribution",
    "build_dag",
    "certify_triangle_incompatibility",
    "chain_compatible",
    "classify_case",
    "conditional_mutual_information",
    "delta_indicator",
    "entropy",
    "evaluate_inequalities",
    "extremize_under_local_channels",
    "generate",
    "i_min_network",
    "is_markov_compatible",
    "markovian_parents",
    "multivariate_information",
    "mutual_information",
    "scan_mixture_threshold",
    "triangle_decomposition_search",
    "tripartite_information",
]
