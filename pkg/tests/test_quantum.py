"""Tests for the Born-rule network simulator."""

import math

import numpy as np
import pytest

from negshannon.models import MeasurementError, NotApplicableError, UnsupportedFamilyError
from negshannon.probtab import ghz_type, random_case_one
from negshannon.quantum import (
    MeasurementSet,
    NetworkSpec,
    Party,
    PureState,
    basis_state,
    born_distribution,
    canonical_tripartite_state,
    chain_network,
    chain_realization,
    cnot_ladder,
    computational_measurement,
    epr_pair,
    local_qubit_measurement,
    measurement_from_basis,
    product_state,
    qubit_basis,
    random_povm,
    random_pure_state,
    schmidt_decomposition,
    spec_from_document,
    spec_to_document,
    star_amplitude,
    star_network,
    star_network_distribution,
    tripartite_network,
)
from negshannon.shannon import multivariate_information, mutual_information, tripartite_information
from negshannon.witness import ee0a_closed_form

QUARTER = math.pi / 4
HALF_AMP = math.sqrt(0.5)


# =============================================================================
# States and measurements
# =============================================================================


def test_pure_state_must_be_normalized():
    """Test that an unnormalized vector raises."""
    with pytest.raises(MeasurementError):
        PureState((2,), [1.0, 1.0])


def test_measurement_must_sum_to_identity():
    """Test that incomplete POVMs raise."""
    with pytest.raises(MeasurementError):
        MeasurementSet((2,), (np.diag([1.0, 0.0]),))


def test_measurement_must_be_positive():
    """Test that a non-PSD element raises."""
    with pytest.raises(MeasurementError):
        MeasurementSet((2,), (np.diag([2.0, 0.0]), np.diag([-1.0, 1.0])))


def test_random_povm_is_valid(rng):
    """Test that random POVMs have the requested shape."""
    povm = random_povm(rng, (2, 2), 3)
    assert povm.outcomes == 3
    assert sum(povm.elements) == pytest.approx(np.eye(4))


def test_qubit_basis_is_orthonormal():
    """Test Bloch-angle bases and the equator case."""
    for polar, azimuth in [(0.3, 1.1), (2.0, -0.7)]:
        v0, v1 = qubit_basis(polar, azimuth)
        assert abs(np.vdot(v0, v1)) == pytest.approx(0.0, abs=1e-12)
        assert np.linalg.norm(v0) == pytest.approx(1.0)
    plus, minus = qubit_basis(math.pi / 2, 0.0)
    assert plus == pytest.approx(np.array([HALF_AMP, HALF_AMP]))
    assert minus == pytest.approx(np.array([-HALF_AMP, HALF_AMP]))


def test_measurement_from_basis():
    """Test projectors from a basis and rejection of non-orthogonal vectors."""
    m = measurement_from_basis(qubit_basis(math.pi / 2, 0.0))
    assert m.outcomes == 2
    assert m.elements[0] == pytest.approx(np.full((2, 2), 0.5))
    with pytest.raises(MeasurementError):
        measurement_from_basis([np.array([1.0, 0.0]), np.array([HALF_AMP, HALF_AMP])])


def test_local_measurement_is_projective():
    """Test that the entangled local basis is orthonormal and complete."""
    m = local_qubit_measurement([(0.3, 1.1), (1.2, 0.4)], entangling=True)
    assert m.outcomes == 4
    for element in m.elements:
        assert element @ element == pytest.approx(element)


def test_cnot_ladder_is_a_permutation():
    """Test CNOT(0->1) on |10> gives |11>."""
    ladder = cnot_ladder(2)
    assert ladder[3, 2] == 1.0
    assert ladder @ ladder.conj().T == pytest.approx(np.eye(4))


# =============================================================================
# Networks
# =============================================================================


def test_ghz_state_statistics():
    """Test that E4 in the computational basis gives ghz_type(l1^2)."""
    state = canonical_tripartite_state("E4", [0.6, 0.8])
    P = born_distribution(tripartite_network(state))
    assert P.allclose(ghz_type(0.36))


def test_product_state_has_zero_information(rng):
    """Test that independent qubits give independent outcomes."""
    state = product_state(*(random_pure_state(rng, (2,)) for _ in range(3)))
    m = [local_qubit_measurement([(0.7, 0.2)]) for _ in range(3)]
    P = born_distribution(tripartite_network(state, m))
    assert tripartite_information(P) == pytest.approx(0.0, abs=1e-12)
    assert mutual_information(P, "X", "Y") == pytest.approx(0.0, abs=1e-12)


def test_chain_network_has_independent_ends(rng):
    """Test I(X;Y) = 0 for random chain measurements."""
    spec = chain_network(
        random_pure_state(rng, (2, 2)),
        random_pure_state(rng, (2, 2)),
        (random_povm(rng, 2, 2), random_povm(rng, 2, 3), random_povm(rng, (2, 2), 4)),
    )
    P = born_distribution(spec)
    assert P.cards == (2, 3, 4)
    assert mutual_information(P, "X", "Y") <= 1e-9


def test_chain_realization_round_trip(rng, fig1):
    """Test that the quantum chain reproduces I(X;Y) = 0 distributions."""
    for P in [fig1] + [random_case_one(rng, (2, 3, 3)) for _ in range(5)]:
        spec = chain_realization(P)
        assert np.abs(born_distribution(spec).table - P.table).max() <= 1e-9


def test_chain_realization_rejects_dependent_pair():
    """Test that I(X;Y) > 0 raises."""
    with pytest.raises(NotApplicableError):
        chain_realization(ghz_type(0.5))


def test_unowned_subsystem_raises():
    """Test that every subsystem needs a party."""
    qubit = computational_measurement((2,))
    with pytest.raises(MeasurementError):
        NetworkSpec((epr_pair(),), (Party("X", ((0, 0),), qubit),))


def test_shared_subsystem_raises():
    """Test that one subsystem cannot be held twice."""
    qubit = computational_measurement((2,))
    with pytest.raises(MeasurementError):
        NetworkSpec(
            (epr_pair(),),
            (Party("X", ((0, 0),), qubit), Party("Y", ((0, 0),), qubit)),
        )


def test_measurement_dims_must_match():
    """Test that a party's POVM must act on its subsystems."""
    with pytest.raises(MeasurementError):
        NetworkSpec(
            (basis_state((3,), (0,)),),
            (Party("X", ((0, 0),), computational_measurement((2,))),),
        )


# =============================================================================
# Canonical states and Schmidt decomposition
# =============================================================================


def test_canonical_states_are_normalized():
    """Test E5 and E6 with valid coefficients."""
    s = 1 / math.sqrt(3)
    e5 = canonical_tripartite_state("E5", [0.6, 0.8, s, s, s])
    e6 = canonical_tripartite_state("E6", [0.6, 0.8, 0.6, 0.8, s, s, s])
    assert e5.dims == e6.dims == (2, 2, 2)


def test_canonical_state_errors():
    """Test family, parameter count and normalization errors."""
    with pytest.raises(UnsupportedFamilyError):
        canonical_tripartite_state("E7", [0.6, 0.8])
    with pytest.raises(MeasurementError):
        canonical_tripartite_state("E4", [0.6])
    with pytest.raises(MeasurementError):
        canonical_tripartite_state("E4", [0.6, 0.6])
    with pytest.raises(MeasurementError):
        canonical_tripartite_state("chain", [0.6, 0.8])


def test_schmidt_rank_two_across_every_cut():
    """Test that E4 states have Schmidt rank two for each party."""
    state = canonical_tripartite_state("E4", [0.6, 0.8])
    for party in range(3):
        decomposition = schmidt_decomposition(state, [party])
        assert decomposition.rank() == 2
        assert decomposition.coefficients[:2] == pytest.approx([0.8, 0.6])


def test_schmidt_reconstructs_state(rng):
    """Test that the decomposition rebuilds the amplitude matrix."""
    state = random_pure_state(rng, (2, 3))
    decomposition = schmidt_decomposition(state, [0])
    assert decomposition.reconstruct() == pytest.approx(state.tensor)


def test_product_state_has_rank_one(rng):
    """Test that a product state has one Schmidt coefficient."""
    state = product_state(random_pure_state(rng, (2,)), random_pure_state(rng, (3,)))
    assert schmidt_decomposition(state, [0]).rank() == 1


def test_schmidt_rejects_bad_bipartition():
    """Test that a bipartition must split the subsystems."""
    with pytest.raises(MeasurementError):
        schmidt_decomposition(epr_pair(), [0, 1])


# =============================================================================
# Star network
# =============================================================================


def test_star_leaves_are_independent():
    """Test that the leaves carry no information without the centre."""
    P = star_network_distribution([math.pi / 6, QUARTER, math.pi / 3])
    assert P.names == ("X1", "X2", "X3", "Y")
    assert multivariate_information(P, ["X1", "X2", "X3"]) == pytest.approx(0.0, abs=1e-9)


def test_star_fourier_conditional_information():
    """Test that the Fourier centre gives the uniform EE0a value at maximal entanglement."""
    P = star_network_distribution([QUARTER] * 3, "fourier")
    value = multivariate_information(P, ["X1", "X2", "X3"], "Y")
    assert value == pytest.approx(ee0a_closed_form(0.25, 0.25, 0.25), abs=1e-9)


def test_star_ghz_swap_conditional_information():
    """Test that GHZ-basis outcomes leave one bit of positive information."""
    P = star_network_distribution([QUARTER] * 3, "ghz_swap")
    assert multivariate_information(P, ["X1", "X2", "X3"], "Y") == pytest.approx(1.0, abs=1e-9)


def test_star_leaf_marginals():
    """Test that each leaf bit follows cos^2 and sin^2 of its angle."""
    thetas = [math.pi / 8, QUARTER, 3 * math.pi / 8]
    P = star_network_distribution(thetas)
    for k, theta in enumerate(thetas):
        marginal = P.table.sum(axis=tuple(i for i in range(4) if i != k))
        assert marginal == pytest.approx([math.cos(theta) ** 2, math.sin(theta) ** 2])
    assert star_amplitude(thetas, (0, 0, 0)) == pytest.approx(
        math.cos(thetas[0]) * math.cos(thetas[1]) * math.cos(thetas[2])
    )


def test_star_rejects_bad_angles():
    """Test the angle count and range checks."""
    with pytest.raises(MeasurementError):
        star_network([QUARTER, QUARTER])
    with pytest.raises(MeasurementError):
        star_network([0.0, QUARTER, QUARTER])
    with pytest.raises(MeasurementError):
        star_network([QUARTER] * 3, "bell")


def test_spec_document_round_trip(fig1):
    """Test that a network spec survives its document form."""
    spec = chain_realization(fig1)
    rebuilt = spec_from_document(spec_to_document(spec))
    assert born_distribution(rebuilt).allclose(born_distribution(spec))
