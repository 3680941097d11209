"""Born-rule simulation of quantum networks with independent pure sources."""

import cmath
import itertools
import math
from collections.abc import Sequence
from dataclasses import dataclass
from typing import Optional, Union

import numpy as np

from .config import DEFAULT_TOLERANCES
from .log import get_logger
from .models import (
    MeasurementError,
    NotApplicableError,
    QuantumFamily,
    StarMode,
    UnsupportedFamilyError,
)
from .probtab import JointDistribution
from .schemas import NetworkSpecDoc, PartyDoc, SourceDoc
from .shannon import mutual_information

logger = get_logger(__name__)

NORM_TOL = 1e-12
CLIP_TOL = 1e-12

Slot = tuple[int, int]


# =============================================================================
# States and measurements
# =============================================================================


@dataclass(frozen=True, eq=False)
class PureState:
    """Normalized amplitude vector over subsystems of the given dimensions."""

    dims: tuple[int, ...]
    amplitudes: np.ndarray

    def __post_init__(self) -> None:
        dims = tuple(int(d) for d in self.dims)
        amplitudes = np.array(self.amplitudes, dtype=complex).ravel()
        if not dims or any(d < 1 for d in dims):
            raise MeasurementError(f"invalid subsystem dimensions {list(dims)}")
        if amplitudes.size != math.prod(dims):
            raise MeasurementError(
                f"{amplitudes.size} amplitudes for dimensions {list(dims)}"
            )
        norm = float(np.vdot(amplitudes, amplitudes).real)
        if abs(norm - 1.0) > NORM_TOL:
            raise MeasurementError(f"state norm {norm!r} differs from 1")
        amplitudes.setflags(write=False)
        object.__setattr__(self, "dims", dims)
        object.__setattr__(self, "amplitudes", amplitudes)

    @property
    def tensor(self) -> np.ndarray:
        return self.amplitudes.reshape(self.dims)


@dataclass(frozen=True, eq=False)
class MeasurementSet:
    """POVM on subsystems of the given dimensions."""

    dims: tuple[int, ...]
    elements: tuple[np.ndarray, ...]

    def __post_init__(self) -> None:
        dims = tuple(int(d) for d in self.dims)
        size = math.prod(dims)
        elements = tuple(np.array(e, dtype=complex) for e in self.elements)
        if not elements:
            raise MeasurementError("a measurement needs at least one element")
        tol = DEFAULT_TOLERANCES.psd
        total = np.zeros((size, size), dtype=complex)
        for k, element in enumerate(elements):
            if element.shape != (size, size):
                raise MeasurementError(
                    f"element {k} has shape {element.shape}, expected {(size, size)}"
                )
            if np.abs(element - element.conj().T).max() > tol:
                raise MeasurementError(f"element {k} is not Hermitian")
            if np.linalg.eigvalsh(element).min() < -tol:
                raise MeasurementError(f"element {k} is not positive semidefinite")
            total += element
            element.setflags(write=False)
        if np.abs(total - np.eye(size)).max() > tol:
            raise MeasurementError("measurement elements do not sum to the identity")
        object.__setattr__(self, "dims", dims)
        object.__setattr__(self, "elements", elements)

    @property
    def outcomes(self) -> int:
        return len(self.elements)


@dataclass(frozen=True)
class Party:
    """Network node measuring the source subsystems it holds.

    Args:
        name: Label of the outcome variable
        slots: (source index, subsystem index) pairs, in measurement order
        measurement: POVM over the held subsystems
    """

    name: str
    slots: tuple[Slot, ...]
    measurement: MeasurementSet


@dataclass(frozen=True)
class NetworkSpec:
    """Independent pure sources and the parties that measure them."""

    sources: tuple[PureState, ...]
    parties: tuple[Party, ...]

    def __post_init__(self) -> None:
        owned: dict[Slot, str] = {}
        for party in self.parties:
            dims = []
            for source, subsystem in party.slots:
                if not 0 <= source < len(self.sources):
                    raise MeasurementError(f"{party.name}: unknown source {source}")
                if not 0 <= subsystem < len(self.sources[source].dims):
                    raise MeasurementError(
                        f"{party.name}: source {source} has no subsystem {subsystem}"
                    )
                if (source, subsystem) in owned:
                    raise MeasurementError(
                        f"subsystem {(source, subsystem)} held by {owned[(source, subsystem)]}"
                        f" and {party.name}"
                    )
                owned[(source, subsystem)] = party.name
                dims.append(self.sources[source].dims[subsystem])
            if tuple(dims) != party.measurement.dims:
                raise MeasurementError(
                    f"{party.name}: measurement dims {list(party.measurement.dims)} do not"
                    f" match held subsystems {dims}"
                )
        expected = {(s, k) for s, src in enumerate(self.sources) for k in range(len(src.dims))}
        missing = expected - owned.keys()
        if missing:
            raise MeasurementError(f"subsystems without a party: {sorted(missing)}")
        names = [p.name for p in self.parties]
        if len(set(names)) != len(names):
            raise MeasurementError(f"duplicate party names {names}")


# =============================================================================
# Constructors
# =============================================================================


def product_state(*states: PureState) -> PureState:
    """Tensor product, subsystems in argument order."""
    amplitudes = np.array([1.0 + 0j])
    dims: list[int] = []
    for state in states:
        amplitudes = np.kron(amplitudes, state.amplitudes)
        dims.extend(state.dims)
    return PureState(tuple(dims), amplitudes)


def basis_state(dims: Sequence[int], index: Sequence[int]) -> PureState:
    amplitudes = np.zeros(tuple(dims), dtype=complex)
    amplitudes[tuple(index)] = 1.0
    return PureState(tuple(dims), amplitudes.ravel())


def epr_pair(theta: float = math.pi / 4) -> PureState:
    """cos θ |00> + sin θ |11>."""
    return PureState((2, 2), [math.cos(theta), 0.0, 0.0, math.sin(theta)])


def random_pure_state(rng: np.random.Generator, dims: Sequence[int]) -> PureState:
    """Haar-random pure state from a normalized complex Gaussian vector."""
    size = math.prod(dims)
    vector = rng.normal(size=size) + 1j * rng.normal(size=size)
    return PureState(tuple(dims), vector / np.linalg.norm(vector))


def random_povm(
    rng: np.random.Generator, dims: Union[int, Sequence[int]], outcomes: int
) -> MeasurementSet:
    """Random POVM: A_k = G_k G_k^†, rescaled by S^{-1/2} with S = Σ A_k."""
    dims = (dims,) if isinstance(dims, int) else tuple(dims)
    dim = math.prod(dims)
    raw = []
    for _ in range(outcomes):
        g = rng.normal(size=(dim, dim)) + 1j * rng.normal(size=(dim, dim))
        raw.append(g @ g.conj().T)
    w, v = np.linalg.eigh(sum(raw))
    inv_sqrt = v @ np.diag(w ** -0.5) @ v.conj().T
    elements = []
    for a in raw:
        e = inv_sqrt @ a @ inv_sqrt
        elements.append(0.5 * (e + e.conj().T))
    # absorb rounding so the elements sum to the identity exactly
    elements[-1] = elements[-1] + (np.eye(dim) - sum(elements))
    return MeasurementSet(dims, tuple(elements))


def measurement_from_basis(
    vectors: Sequence[np.ndarray], dims: Optional[Sequence[int]] = None
) -> MeasurementSet:
    """Projective measurement {|v><v|} from an orthonormal basis."""
    vs = [np.asarray(v, dtype=complex).ravel() for v in vectors]
    size = vs[0].size
    dims = tuple(dims) if dims is not None else (size,)
    gram = np.array([[np.vdot(a, b) for b in vs] for a in vs])
    if len(vs) != size or np.abs(gram - np.eye(size)).max() > DEFAULT_TOLERANCES.psd:
        raise MeasurementError("basis vectors are not orthonormal and complete")
    return MeasurementSet(dims, tuple(np.outer(v, v.conj()) for v in vs))


def computational_measurement(dims: Sequence[int]) -> MeasurementSet:
    size = math.prod(dims)
    return measurement_from_basis(list(np.eye(size)), dims)


def qubit_basis(polar: float, azimuth: float) -> tuple[np.ndarray, np.ndarray]:
    """Orthonormal qubit basis with first vector at the Bloch angles (polar, azimuth)."""
    c, s = math.cos(polar / 2), math.sin(polar / 2)
    phase = cmath.exp(1j * azimuth)
    return (
        np.array([c, phase * s], dtype=complex),
        np.array([-s / phase, c], dtype=complex),
    )


def cnot_ladder(qubits: int) -> np.ndarray:
    """CNOT(0->1) then CNOT(1->2) and so on, on qubits in big-endian order."""
    size = 2**qubits
    unitary = np.eye(size, dtype=complex)
    for control in range(qubits - 1):
        target = control + 1
        perm = np.zeros((size, size))
        for index in range(size):
            bits = [(index >> (qubits - 1 - q)) & 1 for q in range(qubits)]
            if bits[control]:
                bits[target] ^= 1
            image = int("".join(map(str, bits)), 2)
            perm[image, index] = 1.0
        unitary = perm @ unitary
    return unitary


def local_qubit_measurement(
    angles: Sequence[tuple[float, float]], entangling: bool = False
) -> MeasurementSet:
    """Product of qubit bases, optionally preceded by a CNOT ladder.

    Outcome index is the big-endian bit string of the per-qubit outcomes.
    """
    bases = [qubit_basis(polar, azimuth) for polar, azimuth in angles]
    vectors = []
    for bits in itertools.product((0, 1), repeat=len(bases)):
        vector = np.array([1.0 + 0j])
        for basis, bit in zip(bases, bits):
            vector = np.kron(vector, basis[bit])
        vectors.append(vector)
    if entangling and len(bases) > 1:
        ladder = cnot_ladder(len(bases))
        vectors = [ladder.conj().T @ v for v in vectors]
    return measurement_from_basis(vectors, (2,) * len(bases))


# =============================================================================
# Born rule
# =============================================================================


def _global_state(spec: NetworkSpec) -> np.ndarray:
    """Source product reordered and grouped into one axis per party."""
    tensor = np.array(1.0 + 0j)
    offsets = []
    for source in spec.sources:
        offsets.append(tensor.ndim)
        tensor = np.multiply.outer(tensor, source.tensor)
    order = [offsets[s] + k for party in spec.parties for s, k in party.slots]
    tensor = np.transpose(tensor, order)
    shape = [math.prod(party.measurement.dims) for party in spec.parties]
    return tensor.reshape(shape)


def born_distribution(spec: NetworkSpec) -> JointDistribution:
    """p(outcomes) = <ψ| ⊗_i M_i |ψ> with ψ the product of the sources.

    Negative rounding below 1e-12 is clipped before renormalizing.
    """
    psi = _global_state(spec)
    phi = psi
    for i, party in enumerate(spec.parties):
        elements = np.stack(party.measurement.elements)
        phi = np.tensordot(elements, phi, axes=([2], [2 * i]))
        phi = np.moveaxis(phi, [0, 1], [2 * i, 2 * i + 1])
    n = len(spec.parties)
    table = np.tensordot(
        phi, psi.conj(), axes=(list(range(1, 2 * n, 2)), list(range(n)))
    ).real
    total = float(table.sum())
    if table.min() < -CLIP_TOL:
        raise MeasurementError(f"negative probability {table.min():.3g}")
    table = np.clip(table, 0.0, None)
    if abs(total - 1.0) > DEFAULT_TOLERANCES.psd:
        logger.debug("renormalizing Born probabilities summing to %.15g", total)
    table = table / table.sum()
    return JointDistribution.from_table([p.name for p in spec.parties], table)


# =============================================================================
# Network constructions
# =============================================================================


def _completed_unitary(column: np.ndarray) -> np.ndarray:
    """Unitary whose first column is the given unit vector."""
    n = column.size
    q, r = np.linalg.qr(np.column_stack([column, np.eye(n)]), mode="complete")
    q[:, 0] *= r[0, 0]
    return q


def chain_realization(
    P: JointDistribution, tol: float = DEFAULT_TOLERANCES.info
) -> NetworkSpec:
    """Quantum chain network reproducing a distribution with I(X;Y) <= tol.

    The middle party holds one half of each source plus an ancilla; it
    prepares Σ_z sqrt(p(z|x,y)) |z> on the ancilla conditioned on (x, y)
    and reads the ancilla in the computational basis.
    """
    if P.arity != 3:
        raise MeasurementError(f"expected three variables, got {list(P.names)}")
    x, y, z = P.names
    i_xy = mutual_information(P, x, y)
    if i_xy > tol:
        raise NotApplicableError(f"I({x};{y}) = {i_xy:.6g} > {tol:g}; no chain realization")

    table = P.table
    cx, cy, cz = P.cards
    px, py, pxy = table.sum(axis=(1, 2)), table.sum(axis=(0, 2)), table.sum(axis=2)
    phi1 = PureState((cx, cx), np.diag(np.sqrt(px)).ravel() / np.linalg.norm(np.sqrt(px)))
    phi2 = PureState((cy, cy), np.diag(np.sqrt(py)).ravel() / np.linalg.norm(np.sqrt(py)))
    ancilla = basis_state((cz,), (0,))

    elements = []
    unitaries = {}
    for i, j in itertools.product(range(cx), range(cy)):
        column = np.zeros(cz)
        if pxy[i, j] > 0:
            column = np.sqrt(table[i, j, :] / pxy[i, j])
            column /= np.linalg.norm(column)
        else:
            column[0] = 1.0
        unitaries[(i, j)] = _completed_unitary(column.astype(complex))
    for k in range(cz):
        element = np.zeros((cx * cy * cz,) * 2, dtype=complex)
        ket = np.zeros(cz)
        ket[k] = 1.0
        for (i, j), w in unitaries.items():
            record = np.zeros(cx * cy)
            record[i * cy + j] = 1.0
            local = w.conj().T @ np.outer(ket, ket) @ w
            element += np.kron(np.outer(record, record), local)
        elements.append(0.5 * (element + element.conj().T))

    parties = (
        Party(x, ((0, 0),), computational_measurement((cx,))),
        Party(y, ((1, 0),), computational_measurement((cy,))),
        Party(z, ((0, 1), (1, 1), (2, 0)), MeasurementSet((cx, cy, cz), tuple(elements))),
    )
    return NetworkSpec((phi1, phi2, ancilla), parties)


def chain_network(
    left: PureState,
    right: PureState,
    measurements: Sequence[MeasurementSet],
    names: Sequence[str] = ("X", "Y", "Z"),
) -> NetworkSpec:
    """Chain X - Z - Y: the middle party holds the second half of left and the first of right.

    Args:
        left: Bipartite source shared by X and Z
        right: Bipartite source shared by Z and Y
        measurements: POVMs of X, Y and Z (Z acts on both of its halves)
        names: Outcome labels for X, Y and Z
    """
    if len(left.dims) != 2 or len(right.dims) != 2:
        raise MeasurementError("chain sources must be bipartite")
    mx, my, mz = measurements
    x, y, z = names
    return NetworkSpec(
        (left, right),
        (
            Party(x, ((0, 0),), mx),
            Party(y, ((1, 1),), my),
            Party(z, ((0, 1), (1, 0)), mz),
        ),
    )


def tripartite_network(
    state: PureState,
    measurements: Optional[Sequence[MeasurementSet]] = None,
    names: Sequence[str] = ("X", "Y", "Z"),
) -> NetworkSpec:
    """One tripartite source, one subsystem per party."""
    if len(state.dims) != 3:
        raise MeasurementError("a tripartite source needs three subsystems")
    if measurements is None:
        measurements = [computational_measurement((d,)) for d in state.dims]
    return NetworkSpec(
        (state,),
        tuple(Party(n, ((0, k),), m) for k, (n, m) in enumerate(zip(names, measurements))),
    )


@dataclass(frozen=True)
class SchmidtDecomposition:
    """ψ = Σ_k c_k |left_k>|right_k>; basis vectors are columns."""

    coefficients: np.ndarray
    left: np.ndarray
    right: np.ndarray

    def rank(self, tol: float = 1e-10) -> int:
        return int(np.sum(self.coefficients > tol))

    def reconstruct(self) -> np.ndarray:
        return (self.left * self.coefficients) @ self.right.T


def schmidt_decomposition(
    state: PureState, bipartition: Sequence[int]
) -> SchmidtDecomposition:
    """SVD of the amplitude matrix with rows indexed by the subsystems in bipartition."""
    left = tuple(sorted(set(bipartition)))
    right = tuple(k for k in range(len(state.dims)) if k not in left)
    if not left or not right or any(not 0 <= k < len(state.dims) for k in left):
        raise MeasurementError(
            f"bipartition {list(bipartition)} must split {len(state.dims)} subsystems in two"
        )
    matrix = np.transpose(state.tensor, left + right).reshape(
        math.prod(state.dims[k] for k in left), -1
    )
    u, s, vh = np.linalg.svd(matrix, full_matrices=False)
    return SchmidtDecomposition(coefficients=s, left=u, right=vh.T)


def _check_unit(name: str, values: Sequence[float]) -> None:
    norm = sum(v * v for v in values)
    if abs(norm - 1.0) > DEFAULT_TOLERANCES.prob:
        raise MeasurementError(f"{name} coefficients have squared norm {norm:.12g}, expected 1")


def canonical_tripartite_state(
    family: Union[str, QuantumFamily], params: Sequence[float]
) -> PureState:
    """Three-qubit states with Schmidt rank two across every single-party cut.

    E4 takes (l1, l2); E5 takes (l1, l2, g1, g2, g3); E6 takes
    (l1, l2, alpha, beta, gamma, g1, g2).
    """
    try:
        family = QuantumFamily(family)
    except ValueError:
        raise UnsupportedFamilyError(f"unknown quantum family {family!r}") from None
    amplitudes = np.zeros((2, 2, 2))
    params = [float(p) for p in params]
    expected = {QuantumFamily.E4: 2, QuantumFamily.E5: 5, QuantumFamily.E6: 7}
    if family not in expected:
        raise MeasurementError(f"{family.value} is not a canonical tripartite family")
    if len(params) != expected[family]:
        raise MeasurementError(
            f"{family.value} takes {expected[family]} parameters, got {len(params)}"
        )
    l1, l2 = params[:2]
    _check_unit("lambda", (l1, l2))
    if family is QuantumFamily.E4:
        amplitudes[0, 0, 0], amplitudes[1, 1, 1] = l1, l2
    elif family is QuantumFamily.E5:
        g1, g2, g3 = params[2:]
        _check_unit("gamma", (g1, g2, g3))
        amplitudes[0, 0, 0] = l1
        amplitudes[1, 0, 1], amplitudes[1, 1, 0], amplitudes[1, 1, 1] = l2 * g1, l2 * g2, l2 * g3
    else:
        alpha, beta, gamma, g1, g2 = params[2:]
        _check_unit("alpha/beta", (alpha, beta))
        _check_unit("gamma", (gamma, g1, g2))
        amplitudes[0, 0, 0], amplitudes[0, 1, 1] = l1 * alpha, l1 * beta
        amplitudes[1, 0, 0], amplitudes[1, 1, 1] = l2 * gamma * beta, -l2 * gamma * alpha
        amplitudes[1, 0, 1], amplitudes[1, 1, 0] = l2 * g1, l2 * g2
    return PureState((2, 2, 2), amplitudes.ravel())


# Supports of the two Fourier blocks on the centre's three qubits
FOURIER_BLOCKS = (
    ((0, 0, 1), (0, 1, 0), (1, 0, 0), (0, 1, 1)),
    ((1, 1, 0), (1, 0, 1), (0, 0, 0), (1, 1, 1)),
)


def _fourier_basis() -> list[np.ndarray]:
    vectors = []
    for block in FOURIER_BLOCKS:
        for k in range(1, 5):
            vector = np.zeros(8, dtype=complex)
            for power, bits in enumerate(block):
                vector[4 * bits[0] + 2 * bits[1] + bits[2]] = (1j ** (power * k)) / 2
            vectors.append(vector)
    return vectors


def _ghz_swap_basis() -> list[np.ndarray]:
    vectors = []
    for b in range(4):
        for sign in (1.0, -1.0):
            vector = np.zeros(8, dtype=complex)
            vector[b], vector[7 - b] = 1 / math.sqrt(2), sign / math.sqrt(2)
            vectors.append(vector)
    return vectors


def star_network(
    thetas: Sequence[float], mode: Union[str, StarMode] = StarMode.FOURIER
) -> NetworkSpec:
    """Three leaves X1..X3, each sharing cos θ|00> + sin θ|11> with the centre Y."""
    try:
        mode = StarMode(mode)
    except ValueError:
        raise MeasurementError(f"unknown star measurement {mode!r}") from None
    if len(thetas) != 3:
        raise MeasurementError(f"star network takes three angles, got {len(thetas)}")
    for theta in thetas:
        if not 0.0 < theta < math.pi / 2:
            raise MeasurementError(f"angle {theta} outside (0, pi/2)")
    basis = _fourier_basis() if mode is StarMode.FOURIER else _ghz_swap_basis()
    centre = measurement_from_basis(basis, (2, 2, 2))
    leaves = tuple(
        Party(f"X{j + 1}", ((j, 0),), computational_measurement((2,))) for j in range(3)
    )
    return NetworkSpec(
        tuple(epr_pair(t) for t in thetas),
        leaves + (Party("Y", ((0, 1), (1, 1), (2, 1)), centre),),
    )


def star_network_distribution(
    thetas: Sequence[float], mode: Union[str, StarMode] = StarMode.FOURIER
) -> JointDistribution:
    """Joint distribution over (X1, X2, X3, Y) of the three-leaf star network."""
    return born_distribution(star_network(thetas, mode))


def star_amplitude(thetas: Sequence[float], bits: Sequence[int]) -> float:
    """a_{i1 i2 i3}: product of cos θ_j for bit 0 and sin θ_j for bit 1."""
    return math.prod(
        math.sin(t) if b else math.cos(t) for t, b in zip(thetas, bits)
    )


# =============================================================================
# Documents
# =============================================================================


def _pairs(values: np.ndarray) -> list:
    return np.stack([values.real, values.imag], axis=-1).tolist()


def _complex(pairs: list) -> np.ndarray:
    array = np.asarray(pairs, dtype=float)
    if array.shape[-1] != 2:
        raise MeasurementError("complex entries must be [re, im] pairs")
    return array[..., 0] + 1j * array[..., 1]


def spec_to_document(spec: NetworkSpec) -> NetworkSpecDoc:
    return NetworkSpecDoc(
        sources=[
            SourceDoc(dims=list(s.dims), amplitudes=_pairs(s.amplitudes)) for s in spec.sources
        ],
        parties=[
            PartyDoc(
                name=p.name,
                slots=[list(slot) for slot in p.slots],
                elements=[_pairs(e) for e in p.measurement.elements],
            )
            for p in spec.parties
        ],
    )


def spec_from_document(doc: NetworkSpecDoc) -> NetworkSpec:
    sources = tuple(PureState(tuple(s.dims), _complex(s.amplitudes)) for s in doc.sources)
    parties = []
    for p in doc.parties:
        if any(len(slot) != 2 for slot in p.slots):
            raise MeasurementError(f"{p.name}: slots must be [source, subsystem] pairs")
        slots = tuple((int(a), int(b)) for a, b in p.slots)
        dims = []
        for source, subsystem in slots:
            if not 0 <= source < len(sources) or not 0 <= subsystem < len(sources[source].dims):
                raise MeasurementError(f"{p.name}: unknown slot {(source, subsystem)}")
            dims.append(sources[source].dims[subsystem])
        elements = tuple(_complex(e) for e in p.elements)
        parties.append(Party(p.name, slots, MeasurementSet(tuple(dims), elements)))
    return NetworkSpec(sources, tuple(parties))
