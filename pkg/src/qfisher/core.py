"""Dense multi-qubit states, operators and the linear algebra underneath.

Conventions used throughout the package:

* qubits are numbered ``0 .. N-1`` and qubit 0 is the most significant bit
  of the computational-basis index, so ``|b0 b1 ... b(N-1)>`` sits at index
  ``sum(b_l * 2**(N-1-l))``;
* ``sigma_z |0> = +|0>``.

Everything is stored dense; the qubit count is capped (default 12) because
the eigendecompositions that dominate the cost scale as ``8**N``.
"""

from __future__ import annotations

import json
from dataclasses import dataclass

import numpy as np

__all__ = [
    "InvariantError",
    "PureState",
    "DensityMatrix",
    "HermitianOperator",
    "Spectrum",
    "PAULI_X",
    "PAULI_Y",
    "PAULI_Z",
    "set_max_qubits",
    "get_max_qubits",
    "make_pure",
    "density_from_pure",
    "tensor",
    "collective_spin",
    "spin_along",
    "local_generator",
    "unit_direction",
    "eig_hermitian",
    "partial_transpose",
    "is_ppt",
    "mix_with_identity",
    "expectation",
    "variance",
    "state_to_json",
    "state_from_json",
    "save_state",
    "load_state",
]

PAULI_X = np.array([[0.0, 1.0], [1.0, 0.0]], dtype=complex)
PAULI_Y = np.array([[0.0, -1.0j], [1.0j, 0.0]], dtype=complex)
PAULI_Z = np.array([[1.0, 0.0], [0.0, -1.0]], dtype=complex)
PAULIS = {"x": PAULI_X, "y": PAULI_Y, "z": PAULI_Z}

NORM_TOL = 1e-12
HERMITICITY_TOL = 1e-10
TRACE_TOL = 1e-10
PSD_TOL = 1e-9
DIRECTION_TOL = 1e-9

_MAX_QUBITS = 12


class InvariantError(ValueError):
    """A physical invariant (normalization, hermiticity, positivity) is broken."""


def set_max_qubits(n: int) -> None:
    """Raise or lower the dense-storage qubit cap (default 12)."""
    global _MAX_QUBITS
    if n < 1:
        raise ValueError("qubit cap must be at least 1")
    _MAX_QUBITS = int(n)


def get_max_qubits() -> int:
    return _MAX_QUBITS


def _check_num_qubits(n: int) -> None:
    if not isinstance(n, (int, np.integer)) or n < 1:
        raise ValueError(f"number of qubits must be a positive integer, got {n!r}")
    if n > _MAX_QUBITS:
        raise ValueError(
            f"{n} qubits exceeds the dense-storage cap of {_MAX_QUBITS}; "
            "raise it with set_max_qubits() if you really want this"
        )


def _frozen(arr: np.ndarray) -> np.ndarray:
    out = np.array(arr, copy=True)
    out.setflags(write=False)
    return out


@dataclass(frozen=True)
class PureState:
    """Normalized complex amplitude vector over the 2**N computational basis."""

    num_qubits: int
    amplitudes: np.ndarray

    def __post_init__(self):
        _check_num_qubits(self.num_qubits)
        amps = np.asarray(self.amplitudes, dtype=complex).reshape(-1)
        if amps.size != 2**self.num_qubits:
            raise InvariantError(
                f"amplitude vector has length {amps.size}, expected {2**self.num_qubits}"
            )
        norm_sq = float(np.sum(np.abs(amps) ** 2))
        if abs(norm_sq - 1.0) > NORM_TOL:
            raise InvariantError(f"state not normalized: sum |a|^2 = {norm_sq!r}")
        object.__setattr__(self, "amplitudes", _frozen(amps))

    @property
    def dim(self) -> int:
        return self.amplitudes.size


@dataclass(frozen=True)
class DensityMatrix:
    """Hermitian, unit-trace, positive-semidefinite matrix on 2**N dimensions."""

    num_qubits: int
    matrix: np.ndarray

    def __post_init__(self):
        _check_num_qubits(self.num_qubits)
        d = 2**self.num_qubits
        mat = np.asarray(self.matrix, dtype=complex)
        if mat.shape != (d, d):
            raise InvariantError(f"matrix has shape {mat.shape}, expected {(d, d)}")
        if np.max(np.abs(mat - mat.conj().T)) > HERMITICITY_TOL:
            raise InvariantError("density matrix is not Hermitian within 1e-10")
        mat = (mat + mat.conj().T) / 2
        tr = float(np.real(np.trace(mat)))
        if abs(tr - 1.0) > TRACE_TOL:
            raise InvariantError(f"trace is {tr!r}, expected 1")
        lo = float(np.linalg.eigvalsh(mat)[0])
        if lo < -PSD_TOL:
            raise InvariantError(f"smallest eigenvalue {lo!r} below -{PSD_TOL}")
        object.__setattr__(self, "matrix", _frozen(mat))

    @property
    def dim(self) -> int:
        return self.matrix.shape[0]


@dataclass(frozen=True)
class HermitianOperator:
    """Hermitian matrix, typically a phase-shift generator."""

    matrix: np.ndarray

    def __post_init__(self):
        mat = np.asarray(self.matrix, dtype=complex)
        if mat.ndim != 2 or mat.shape[0] != mat.shape[1]:
            raise InvariantError(f"operator must be square, got shape {mat.shape}")
        if np.max(np.abs(mat - mat.conj().T)) > HERMITICITY_TOL:
            raise InvariantError("operator is not Hermitian within 1e-10")
        object.__setattr__(self, "matrix", _frozen(mat))

    @property
    def dim(self) -> int:
        return self.matrix.shape[0]


@dataclass(frozen=True)
class Spectrum:
    """Eigendecomposition of a Hermitian matrix, eigenvalues descending."""

    eigenvalues: np.ndarray
    eigenvectors: np.ndarray  # orthonormal columns, eigenvectors[:, i] <-> eigenvalues[i]
    zero_cut: float

    def __post_init__(self):
        object.__setattr__(self, "eigenvalues", _frozen(np.asarray(self.eigenvalues, float)))
        object.__setattr__(self, "eigenvectors", _frozen(np.asarray(self.eigenvectors, complex)))


def _as_matrix(op) -> np.ndarray:
    if isinstance(op, HermitianOperator):
        return op.matrix
    if isinstance(op, DensityMatrix):
        return op.matrix
    return np.asarray(op, dtype=complex)


def _state_vector(state) -> np.ndarray | None:
    """Amplitude vector for pure inputs, None for density matrices."""
    if isinstance(state, PureState):
        return state.amplitudes
    return None


def _state_matrix(state) -> np.ndarray:
    if isinstance(state, PureState):
        return np.outer(state.amplitudes, state.amplitudes.conj())
    if isinstance(state, DensityMatrix):
        return state.matrix
    return np.asarray(state, dtype=complex)


def make_pure(num_qubits: int, amplitudes) -> PureState:
    """Build a pure state from (possibly unnormalized) amplitudes."""
    amps = np.asarray(amplitudes, dtype=complex).reshape(-1)
    if amps.size != 2**num_qubits:
        raise InvariantError(
            f"amplitude vector has length {amps.size}, expected {2**num_qubits}"
        )
    norm = float(np.linalg.norm(amps))
    if norm <= 0.0:
        raise InvariantError("cannot normalize the zero vector")
    return PureState(num_qubits, amps / norm)


def density_from_pure(psi: PureState) -> DensityMatrix:
    """Rank-one projector |psi><psi|."""
    return DensityMatrix(psi.num_qubits, np.outer(psi.amplitudes, psi.amplitudes.conj()))


def tensor(a, b):
    """Tensor product of two values of the same kind (a comes first)."""
    if isinstance(a, PureState) and isinstance(b, PureState):
        return PureState(a.num_qubits + b.num_qubits, np.kron(a.amplitudes, b.amplitudes))
    if isinstance(a, DensityMatrix) and isinstance(b, DensityMatrix):
        return DensityMatrix(a.num_qubits + b.num_qubits, np.kron(a.matrix, b.matrix))
    if isinstance(a, HermitianOperator) and isinstance(b, HermitianOperator):
        return HermitianOperator(np.kron(a.matrix, b.matrix))
    raise TypeError(f"cannot tensor {type(a).__name__} with {type(b).__name__}")


def _popcounts(dim: int) -> np.ndarray:
    return np.bitwise_count(np.arange(dim, dtype=np.uint64)).astype(np.int64)


def collective_spin_matrix(num_qubits: int, axis: str) -> np.ndarray:
    """Dense matrix of J_axis = (1/2) sum_l sigma_axis^(l)."""
    _check_num_qubits(num_qubits)
    d = 2**num_qubits
    out = np.zeros((d, d), dtype=complex)
    idx = np.arange(d)
    if axis == "z":
        out[idx, idx] = (num_qubits - 2 * _popcounts(d)) / 2.0
        return out
    if axis not in ("x", "y"):
        raise ValueError(f"axis must be one of x, y, z, got {axis!r}")
    for l in range(num_qubits):
        mask = 1 << (num_qubits - 1 - l)
        partner = idx ^ mask
        if axis == "x":
            out[partner, idx] += 0.5
        else:
            # sigma_y |0> = i|1>, sigma_y |1> = -i|0>
            bit = (idx & mask) > 0
            out[partner, idx] += np.where(bit, -0.5j, 0.5j)
    return out


def collective_spin(num_qubits: int, axis: str) -> HermitianOperator:
    """Collective spin operator J_x, J_y or J_z on N qubits."""
    return HermitianOperator(collective_spin_matrix(num_qubits, axis))


def unit_direction(direction) -> np.ndarray:
    """Validate a Bloch-sphere direction (unit 3-vector within 1e-9)."""
    n = np.asarray(direction, dtype=float).reshape(-1)
    if n.shape != (3,):
        raise ValueError(f"direction must have 3 components, got {n.shape}")
    if abs(np.dot(n, n) - 1.0) > DIRECTION_TOL:
        raise InvariantError(f"direction is not a unit vector: {n}")
    return n


def spin_along(num_qubits: int, direction) -> HermitianOperator:
    """Collective spin J_n = n_x J_x + n_y J_y + n_z J_z for a unit direction."""
    n = unit_direction(direction)
    mat = sum(
        n[i] * collective_spin_matrix(num_qubits, ax) for i, ax in enumerate("xyz")
    )
    return HermitianOperator(mat)


def _embed_single_qubit(op2: np.ndarray, qubit: int, num_qubits: int) -> np.ndarray:
    left = np.eye(2**qubit)
    right = np.eye(2 ** (num_qubits - 1 - qubit))
    return np.kron(np.kron(left, op2), right)


def local_generator(directions) -> HermitianOperator:
    """Phase generator (1/2) sum_l sigma_(n_l)^(l) with one direction per qubit."""
    dirs = np.asarray(directions, dtype=float)
    if dirs.ndim != 2 or dirs.shape[1] != 3:
        raise ValueError(f"expected an (N, 3) array of directions, got shape {dirs.shape}")
    num_qubits = dirs.shape[0]
    _check_num_qubits(num_qubits)
    d = 2**num_qubits
    out = np.zeros((d, d), dtype=complex)
    for l in range(num_qubits):
        n = unit_direction(dirs[l])
        sigma_n = n[0] * PAULI_X + n[1] * PAULI_Y + n[2] * PAULI_Z
        out += 0.5 * _embed_single_qubit(sigma_n, l, num_qubits)
    return HermitianOperator(out)


def eig_hermitian(op, zero_cut: float = 1e-12) -> Spectrum:
    """Eigendecomposition with descending eigenvalues and validated orthonormality."""
    mat = _as_matrix(op)
    if np.max(np.abs(mat - mat.conj().T)) > HERMITICITY_TOL:
        raise InvariantError("matrix is not Hermitian within 1e-10")
    vals, vecs = np.linalg.eigh(mat)
    vals, vecs = vals[::-1], vecs[:, ::-1]
    recon = (vecs * vals) @ vecs.conj().T
    if np.max(np.abs(recon - mat)) > 1e-9:
        raise InvariantError("eigendecomposition failed to reconstruct the matrix")
    gram = vecs.conj().T @ vecs
    if np.max(np.abs(gram - np.eye(mat.shape[0]))) > 1e-10:
        raise InvariantError("eigenvectors are not orthonormal within 1e-10")
    return Spectrum(vals, vecs, zero_cut)


def _qubit_subset(subset, num_qubits: int) -> list[int]:
    qubits = sorted(set(int(q) for q in subset))
    if not qubits:
        raise ValueError("qubit subset must be nonempty")
    if len(qubits) >= num_qubits:
        raise ValueError("qubit subset must be a proper subset (use .T for all qubits)")
    if qubits[0] < 0 or qubits[-1] >= num_qubits:
        raise ValueError(f"qubit labels must lie in 0..{num_qubits - 1}")
    return qubits


def partial_transpose(rho, subset) -> np.ndarray:
    """Transpose the tensor indices of the given qubits (0-based labels)."""
    if isinstance(rho, DensityMatrix):
        num_qubits, mat = rho.num_qubits, rho.matrix
    else:
        mat = np.asarray(rho, dtype=complex)
        num_qubits = int(round(np.log2(mat.shape[0])))
        if mat.shape != (2**num_qubits, 2**num_qubits):
            raise ValueError(f"matrix shape {mat.shape} is not a qubit register")
    qubits = _qubit_subset(subset, num_qubits)
    t = mat.reshape((2,) * (2 * num_qubits))
    axes = list(range(2 * num_qubits))
    for q in qubits:
        axes[q], axes[num_qubits + q] = axes[num_qubits + q], axes[q]
    return t.transpose(axes).reshape(mat.shape)


def is_ppt(rho, subset, tol: float = 1e-9) -> bool:
    """True iff the partial transpose over the subset has no eigenvalue below -tol."""
    pt = partial_transpose(rho, subset)
    return bool(np.linalg.eigvalsh(pt)[0] >= -tol)


def mix_with_identity(state, p: float) -> DensityMatrix:
    """White-noise mixture p * rho + (1 - p) * I / 2**N."""
    if not 0.0 <= p <= 1.0:
        raise ValueError(f"mixing weight must lie in [0, 1], got {p}")
    if isinstance(state, PureState):
        num_qubits = state.num_qubits
        proj = np.outer(state.amplitudes, state.amplitudes.conj())
    elif isinstance(state, DensityMatrix):
        num_qubits, proj = state.num_qubits, state.matrix
    else:
        raise TypeError(f"expected PureState or DensityMatrix, got {type(state).__name__}")
    d = 2**num_qubits
    return DensityMatrix(num_qubits, p * proj + (1.0 - p) * np.eye(d) / d)


def expectation(state, op) -> float:
    """<op> in the given pure or mixed state (real for Hermitian op)."""
    mat = _as_matrix(op)
    vec = _state_vector(state)
    if vec is not None:
        if mat.shape[0] != vec.size:
            raise ValueError(f"dimension mismatch: state {vec.size}, operator {mat.shape[0]}")
        return float(np.real(np.vdot(vec, mat @ vec)))
    rho = _state_matrix(state)
    if mat.shape != rho.shape:
        raise ValueError(f"dimension mismatch: state {rho.shape}, operator {mat.shape}")
    return float(np.real(np.trace(rho @ mat)))


def variance(state, op) -> float:
    """Variance <op^2> - <op>^2 in the given pure or mixed state."""
    mat = _as_matrix(op)
    vec = _state_vector(state)
    if vec is not None:
        if mat.shape[0] != vec.size:
            raise ValueError(f"dimension mismatch: state {vec.size}, operator {mat.shape[0]}")
        w = mat @ vec
        mean = float(np.real(np.vdot(vec, w)))
        second = float(np.real(np.vdot(w, w)))
        return second - mean**2
    rho = _state_matrix(state)
    if mat.shape != rho.shape:
        raise ValueError(f"dimension mismatch: state {rho.shape}, operator {mat.shape}")
    mean = float(np.real(np.trace(rho @ mat)))
    second = float(np.real(np.trace(rho @ mat @ mat)))
    return second - mean**2


# ---------------------------------------------------------------------------
# JSON persistence: {"n": N, "kind": "pure"|"mixed", "re": [...], "im": [...]}
# with row-major flattening; floats round-trip exactly at double precision.
# ---------------------------------------------------------------------------


def state_to_json(state) -> dict:
    if isinstance(state, PureState):
        arr = state.amplitudes
        kind = "pure"
    elif isinstance(state, DensityMatrix):
        arr = state.matrix.reshape(-1)
        kind = "mixed"
    else:
        raise TypeError(f"expected PureState or DensityMatrix, got {type(state).__name__}")
    return {
        "n": state.num_qubits,
        "kind": kind,
        "re": [float(x) for x in arr.real],
        "im": [float(x) for x in arr.imag],
    }


def state_from_json(data: dict):
    try:
        n = int(data["n"])
        kind = data["kind"]
        arr = np.asarray(data["re"], dtype=float) + 1j * np.asarray(data["im"], dtype=float)
    except (KeyError, TypeError) as exc:
        raise ValueError(f"malformed state record: {exc}") from exc
    if kind == "pure":
        return PureState(n, arr)
    if kind == "mixed":
        return DensityMatrix(n, arr.reshape(2**n, 2**n))
    raise ValueError(f"unknown state kind {kind!r}")


def save_state(state, path) -> None:
    with open(path, "w") as fh:
        json.dump(state_to_json(state), fh)


def load_state(path):
    with open(path) as fh:
        return state_from_json(json.load(fh))
