"""Tests for triangle inflation certificates."""

import itertools

import pytest

from negshannon.inflation import (
    COPIES,
    Certificate,
    Implication,
    Inconclusive,
    certify_triangle_incompatibility,
    extract_implications,
    validate_certificate,
)
from negshannon.models import DistributionError, Independence, W4Kind
from negshannon.probtab import JointDistribution, permute, random_triangle, rename, w4


@pytest.fixture
def correlated_pair():
    """X = Y uniform with an independent uniform Z; realizable in the triangle."""
    return JointDistribution.from_points(
        "XYZ", (2, 2, 2), {(0, 0, 0): 0.25, (0, 0, 1): 0.25, (1, 1, 0): 0.25, (1, 1, 1): 0.25}
    )


def test_w_implications(w_symmetric):
    """Test the six support implications of the W distribution."""
    implications = extract_implications(w_symmetric)
    assert len(implications) == 6
    assert Implication("X1", 1, "Y", 0) in implications
    assert Implication("Z1", 1, "X", 0) in implications
    assert all(i.copy_value == 1 for i in implications)


def test_w_certificate(w_symmetric):
    """Test that W forces the zero-probability event 000."""
    result = certify_triangle_incompatibility(w_symmetric)
    assert isinstance(result, Certificate)
    assert result.forced == {"X": 0, "Y": 0, "Z": 0}
    assert result.probability == 0.0
    assert result.marginal == ("X", "Y", "Z")
    assert validate_certificate(w_symmetric, result)


def test_w_certificate_respects_sources(w_symmetric):
    """Test that W is certified without setting two copies of one source."""
    result = certify_triangle_incompatibility(w_symmetric, Independence.SOURCES)
    assert isinstance(result, Certificate)
    assert validate_certificate(w_symmetric, result)
    assert not ({"Z1", "X2"} <= result.assignment.keys())
    assert not ({"X1", "Y2"} <= result.assignment.keys())
    assert not ({"Y1", "Z2"} <= result.assignment.keys())


def test_ee0a_certificate(ee0a_uniform):
    """Test the EE0a certificate in full mode."""
    result = certify_triangle_incompatibility(ee0a_uniform)
    assert isinstance(result, Certificate)
    assert result.assignment == {"X1": 1, "Z1": 1, "X2": 1, "Y2": 1}
    assert result.forced == {"X": 0, "Y": 0, "Z": 0}
    assert validate_certificate(ee0a_uniform, result)


def test_ee0d_certificate(ee0d_uniform):
    """Test that anti-correlated X and Y force (X, Y) = (0, 0)."""
    result = certify_triangle_incompatibility(ee0d_uniform)
    assert isinstance(result, Certificate)
    assert result.assignment == {"X1": 1, "Y2": 1}
    assert result.forced == {"X": 0, "Y": 0}
    assert result.marginal == ("X", "Y")


def test_ee0a_inconclusive_with_sources(ee0a_uniform):
    """Test that every EE0a certificate pairs copies of one source."""
    result = certify_triangle_incompatibility(ee0a_uniform, "sources")
    assert isinstance(result, Inconclusive)
    assert result.independence is Independence.SOURCES


@pytest.mark.slow
def test_w4_families_certified(rng):
    """Test every w4 kind under every variable permutation."""
    for kind in W4Kind:
        for order in itertools.permutations("XYZ"):
            for weights in rng.dirichlet([1, 1, 1, 1], size=10):
                P = rename(permute(w4(kind, *weights), order), dict(zip(order, "XYZ")))
                result = certify_triangle_incompatibility(P)
                assert isinstance(result, Certificate), (kind, order)
                assert validate_certificate(P, result)


def test_full_mode_certifies_correlated_pair(correlated_pair):
    """Test that full independence flags a triangle-compatible distribution."""
    result = certify_triangle_incompatibility(correlated_pair, Independence.FULL)
    assert isinstance(result, Certificate)
    assert set(result.assignment) >= {"X1", "Y2"}


def test_sources_mode_rejects_correlated_pair(correlated_pair):
    """Test that source-aware enumeration finds nothing."""
    result = certify_triangle_incompatibility(correlated_pair, Independence.SOURCES)
    assert isinstance(result, Inconclusive)
    assert "sources" in result.reason


@pytest.mark.slow
def test_no_false_alarms_on_triangle_samples(rng):
    """Test random classical triangle distributions in sources mode."""
    for _ in range(500):
        P = random_triangle(rng)
        assert isinstance(certify_triangle_incompatibility(P, "sources"), Inconclusive)


def test_uniform_has_no_implications(uniform3):
    """Test that full support forces nothing."""
    assert extract_implications(uniform3) == []
    assert isinstance(certify_triangle_incompatibility(uniform3), Inconclusive)


def test_validate_rejects_tampering(w_symmetric):
    """Test that altered certificates fail validation."""
    result = certify_triangle_incompatibility(w_symmetric)
    assert isinstance(result, Certificate)
    wrong_event = Certificate(
        independence=result.independence,
        assignment=result.assignment,
        forced={"X": 1, "Y": 0, "Z": 0},
        probability=result.probability,
        implications=result.implications,
    )
    assert not validate_certificate(w_symmetric, wrong_event)
    unknown_copy = Certificate(
        independence=result.independence,
        assignment={"W1": 1},
        forced=result.forced,
        probability=0.0,
    )
    assert not validate_certificate(w_symmetric, unknown_copy)


def test_certificate_document(w_symmetric):
    """Test the serialized certificate fields."""
    doc = certify_triangle_incompatibility(w_symmetric).to_document()
    assert doc.verdict == "incompatible"
    assert doc.forced_event == {"X": 0, "Y": 0, "Z": 0}
    assert list(doc.assignment) == [c for c in COPIES if c in doc.assignment]


def test_non_binary_input_raises(eq14):
    """Test that inflation needs three binary variables."""
    with pytest.raises(DistributionError):
        certify_triangle_incompatibility(eq14)
