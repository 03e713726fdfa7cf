"""Quantum and classical Fisher information for multiqubit phase estimation.

The central objects are the quantum Fisher information (QFI) of a state for
a Hermitian phase generator, the 3x3 matrix whose quadratic form gives the
QFI for every collective spin direction, and its two scalar summaries: the
best collective direction (largest eigenvalue) and the uniform average over
the Bloch sphere (trace / 3).
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache

import numpy as np

from .core import (
    PAULIS,
    DensityMatrix,
    InvariantError,
    PureState,
    collective_spin_matrix,
    variance,
    _as_matrix,
    _state_matrix,
)

__all__ = [
    "SpinQfiMatrix",
    "Povm",
    "qfi",
    "qfi_matrix",
    "qfi_max",
    "qfi_avg",
    "qfi_avg_montecarlo",
    "classical_fisher",
    "model_probabilities",
    "optimize_local_directions",
    "povm_from_basis",
    "parity_povm",
    "computational_povm",
    "x_basis_povm",
]

ZERO_CUT = 1e-12
PROB_FLOOR = 1e-12


@lru_cache(maxsize=None)
def _collective_spins(num_qubits: int) -> np.ndarray:
    """Stacked (3, d, d) array of J_x, J_y, J_z; cached per qubit count."""
    jays = np.stack([collective_spin_matrix(num_qubits, ax) for ax in "xyz"])
    jays.setflags(write=False)
    return jays


@dataclass(frozen=True)
class SpinQfiMatrix:
    """Real symmetric 3x3 matrix M with QFI(J_n) = n.T @ M @ n for unit n."""

    matrix: np.ndarray
    num_qubits: int

    def __post_init__(self):
        mat = np.asarray(self.matrix, dtype=float)
        if mat.shape != (3, 3) or not np.array_equal(mat, mat.T):
            raise InvariantError("spin-QFI matrix must be symmetric 3x3")
        evals = np.linalg.eigvalsh(mat)
        if evals[0] < -1e-9:
            raise InvariantError(f"spin-QFI matrix has eigenvalue {evals[0]!r} < -1e-9")
        n = self.num_qubits
        if mat.trace() > n**2 + 2 * n + 1e-6:
            raise InvariantError("spin-QFI matrix trace exceeds the N^2 + 2N ceiling")
        mat = mat.copy()
        mat.setflags(write=False)
        object.__setattr__(self, "matrix", mat)

    def max_direction(self) -> tuple[float, np.ndarray]:
        """Largest eigenvalue and the corresponding unit direction."""
        evals, evecs = np.linalg.eigh(self.matrix)
        direction = evecs[:, -1]
        # fix the sign so equal inputs give identical directions
        pivot = np.argmax(np.abs(direction))
        if direction[pivot] < 0:
            direction = -direction
        return float(evals[-1]), direction

    def average(self) -> float:
        """Uniform Bloch-sphere average of the quadratic form (trace / 3)."""
        return float(self.matrix.trace() / 3.0)

    def as_list(self) -> list[list[float]]:
        return [[float(x) for x in row] for row in self.matrix]


def _pair_weights(evals: np.ndarray, zero_cut: float) -> np.ndarray:
    """(lam_a - lam_b)^2 / (lam_a + lam_b) over pairs above the zero cut."""
    lam_a = evals[..., :, None]
    lam_b = evals[..., None, :]
    den = lam_a + lam_b
    num = (lam_a - lam_b) ** 2
    with np.errstate(divide="ignore", invalid="ignore"):
        w = np.where(den > zero_cut, num / np.where(den > zero_cut, den, 1.0), 0.0)
    return w


def qfi(state, generator, zero_cut: float = ZERO_CUT) -> float:
    """Quantum Fisher information of a state for a Hermitian generator.

    Pure states use the closed form 4 * variance; mixed states go through
    the eigendecomposition, skipping eigenvalue pairs whose sum is below
    ``zero_cut`` times the trace.
    """
    g = _as_matrix(generator)
    if isinstance(state, PureState):
        if g.shape[0] != state.dim:
            raise ValueError(f"dimension mismatch: state {state.dim}, generator {g.shape[0]}")
        return 4.0 * variance(state, g)
    if not isinstance(state, DensityMatrix):
        raise TypeError(f"expected PureState or DensityMatrix, got {type(state).__name__}")
    if g.shape != state.matrix.shape:
        raise ValueError(f"dimension mismatch: state {state.matrix.shape}, generator {g.shape}")
    evals, vecs = np.linalg.eigh(state.matrix)
    cut = zero_cut * float(np.sum(evals))
    m = vecs.conj().T @ g @ vecs
    w = _pair_weights(evals, cut)
    return float(2.0 * np.sum(w * np.abs(m) ** 2))


def _gamma_pure_batch(psis: np.ndarray, jays: np.ndarray) -> np.ndarray:
    """Spin-QFI matrices for a batch of pure states, shape (B, 3, 3)."""
    v = np.einsum("ixy,by->bix", jays, psis)
    e = np.real(np.einsum("bx,bix->bi", psis.conj(), v))
    s = np.real(np.einsum("bix,bjx->bij", v.conj(), v))
    return 4.0 * (s - e[:, :, None] * e[:, None, :])


def _gamma_mixed_batch(rhos: np.ndarray, jays: np.ndarray, zero_cut: float = ZERO_CUT) -> np.ndarray:
    """Spin-QFI matrices for a batch of density matrices, shape (B, 3, 3)."""
    evals, vecs = np.linalg.eigh(rhos)
    cut = zero_cut * np.sum(evals, axis=-1, keepdims=True)[..., None]
    w = _pair_weights(evals, cut)
    out = np.empty((rhos.shape[0], 3, 3))
    vdag = vecs.conj().transpose(0, 2, 1)
    m = [vdag @ jays[i] @ vecs for i in range(3)]
    for i in range(3):
        for j in range(i, 3):
            out[:, i, j] = 2.0 * np.sum(w * np.real(m[i] * m[j].conj()), axis=(1, 2))
            out[:, j, i] = out[:, i, j]
    return out


def qfi_matrix(state, zero_cut: float = ZERO_CUT) -> SpinQfiMatrix:
    """3x3 collective-spin QFI matrix of a pure or mixed state."""
    if isinstance(state, PureState):
        jays = _collective_spins(state.num_qubits)
        gamma = _gamma_pure_batch(state.amplitudes[None, :], jays)[0]
    elif isinstance(state, DensityMatrix):
        jays = _collective_spins(state.num_qubits)
        gamma = _gamma_mixed_batch(state.matrix[None, :, :], jays, zero_cut)[0]
    else:
        raise TypeError(f"expected PureState or DensityMatrix, got {type(state).__name__}")
    gamma = np.triu(gamma) + np.triu(gamma, 1).T  # exactly symmetric
    return SpinQfiMatrix(gamma, state.num_qubits)


def qfi_max(state) -> tuple[float, np.ndarray]:
    """Largest QFI over collective spin directions and the optimal direction."""
    return qfi_matrix(state).max_direction()


def qfi_avg(state) -> float:
    """QFI averaged uniformly over collective spin directions."""
    return qfi_matrix(state).average()


def qfi_avg_montecarlo(state, num_directions: int, seed=None) -> float:
    """Monte-Carlo estimate of the direction-averaged QFI."""
    if num_directions < 1:
        raise ValueError("need at least one direction")
    gamma = qfi_matrix(state).matrix
    rng = np.random.default_rng(seed)
    dirs = rng.standard_normal((num_directions, 3))
    dirs /= np.linalg.norm(dirs, axis=1, keepdims=True)
    return float(np.mean(np.einsum("ki,ij,kj->k", dirs, gamma, dirs)))


# ---------------------------------------------------------------------------
# POVMs and the classical Fisher information of a concrete measurement
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class Povm:
    """Positive operator valued measurement: PSD elements summing to identity."""

    elements: tuple

    def __post_init__(self):
        elems = tuple(np.asarray(e, dtype=complex) for e in self.elements)
        if not elems:
            raise InvariantError("POVM needs at least one element")
        d = elems[0].shape[0]
        total = np.zeros((d, d), dtype=complex)
        for e in elems:
            if e.shape != (d, d):
                raise InvariantError("POVM elements must share one square shape")
            if np.linalg.eigvalsh((e + e.conj().T) / 2)[0] < -1e-9:
                raise InvariantError("POVM element is not positive semidefinite")
            total += e
        if np.max(np.abs(total - np.eye(d))) > 1e-9:
            raise InvariantError("POVM elements do not sum to the identity")
        frozen = []
        for e in elems:
            e = e.copy()
            e.setflags(write=False)
            frozen.append(e)
        object.__setattr__(self, "elements", tuple(frozen))

    @property
    def dim(self) -> int:
        return self.elements[0].shape[0]

    def __len__(self) -> int:
        return len(self.elements)


def povm_from_basis(basis: np.ndarray) -> Povm:
    """Projective POVM from the orthonormal columns of ``basis``."""
    b = np.asarray(basis, dtype=complex)
    return Povm(tuple(np.outer(b[:, i], b[:, i].conj()) for i in range(b.shape[1])))


def parity_povm(num_qubits: int, axis: str = "x") -> Povm:
    """Two-outcome parity measurement (I +- sigma_axis^tensor(N)) / 2."""
    if axis not in PAULIS:
        raise ValueError(f"axis must be x, y, or z, got {axis!r}")
    op = np.array([[1.0]], dtype=complex)
    for _ in range(num_qubits):
        op = np.kron(op, PAULIS[axis])
    eye = np.eye(2**num_qubits)
    return Povm(((eye + op) / 2, (eye - op) / 2))


def computational_povm(num_qubits: int) -> Povm:
    return povm_from_basis(np.eye(2**num_qubits, dtype=complex))


def x_basis_povm(num_qubits: int) -> Povm:
    """Projective measurement in the sigma_x^tensor(N) eigenbasis."""
    h = np.array([[1.0, 1.0], [1.0, -1.0]], dtype=complex) / np.sqrt(2.0)
    basis = np.array([[1.0]], dtype=complex)
    for _ in range(num_qubits):
        basis = np.kron(basis, h)
    return povm_from_basis(basis)


def model_probabilities(state, generator, povm: Povm, thetas) -> np.ndarray:
    """Outcome probabilities P[t, mu] of the evolved state on a theta grid.

    The state is conjugated by exp(-i theta G) through the eigendecomposition
    of the generator, so a whole grid costs one diagonalization.
    """
    if not isinstance(povm, Povm):
        raise TypeError("povm must be a Povm instance")
    g = _as_matrix(generator)
    rho = _state_matrix(state)
    if rho.shape != g.shape or povm.dim != g.shape[0]:
        raise ValueError("state, generator and POVM dimensions do not match")
    lam, v = np.linalg.eigh(g)
    w = v.conj().T @ rho @ v
    effects = [v.conj().T @ np.asarray(e) @ v for e in povm.elements]
    thetas = np.atleast_1d(np.asarray(thetas, dtype=float))
    out = np.empty((thetas.size, len(effects)))
    gaps = lam[:, None] - lam[None, :]
    for t, theta in enumerate(thetas):
        rho_t = w * np.exp(-1j * theta * gaps)
        for mu, eff in enumerate(effects):
            out[t, mu] = float(np.real(np.sum(rho_t * eff.T)))
    return out


def classical_fisher(state, generator, povm: Povm, theta: float, dtheta: float = 1e-5) -> float:
    """Fisher information of the POVM at theta via central differences.

    Outcomes with probability below 1e-12 are dropped; never exceeds the QFI
    (up to discretization error of the derivative).
    """
    probs = model_probabilities(state, generator, povm, [theta, theta + dtheta, theta - dtheta])
    p0, pp, pm = probs[0], probs[1], probs[2]
    dp = (pp - pm) / (2.0 * dtheta)
    mask = p0 >= PROB_FLOOR
    return float(np.sum(dp[mask] ** 2 / p0[mask]))


# ---------------------------------------------------------------------------
# Local-direction optimization of the pure-state QFI
# ---------------------------------------------------------------------------


def _apply_half_pauli(psi_tensor: np.ndarray, qubit: int, num_qubits: int) -> np.ndarray:
    """(3, d) array with (1/2) sigma_i acting on one qubit of the state."""
    d = psi_tensor.size
    out = np.empty((3, d), dtype=complex)
    moved = np.moveaxis(psi_tensor.reshape((2,) * num_qubits), qubit, 0).reshape(2, -1)
    for i, ax in enumerate("xyz"):
        res = 0.5 * (PAULIS[ax] @ moved)
        res = np.moveaxis(res.reshape((2,) + (2,) * (num_qubits - 1)), 0, qubit)
        out[i] = res.reshape(d)
    return out


def _max_on_sphere(a: np.ndarray, c: np.ndarray, current: np.ndarray) -> np.ndarray:
    """argmax over unit n of -(n.a)^2 + 2 n.c (exact, via a quartic)."""
    na, nc = np.linalg.norm(a), np.linalg.norm(c)
    if na < 1e-14 and nc < 1e-14:
        return current
    if na < 1e-14:
        return c / nc
    a_hat = a / na
    c_par = float(np.dot(c, a_hat))
    c_perp_vec = c - c_par * a_hat
    cp = float(np.linalg.norm(c_perp_vec))
    if cp < 1e-14:
        # g(t) = -|a|^2 t^2 + 2 c_par t on [-1, 1]
        t = np.clip(c_par / na**2, -1.0, 1.0)
        s = np.sqrt(max(0.0, 1.0 - t * t))
        # any direction orthogonal to a_hat works for the transverse part
        probe = np.eye(3)[np.argmin(np.abs(a_hat))]
        p_hat = probe - np.dot(probe, a_hat) * a_hat
        p_hat /= np.linalg.norm(p_hat)
        return t * a_hat + s * p_hat
    p_hat = c_perp_vec / cp
    beta = na**2

    def g(t):
        return -beta * t * t + 2.0 * c_par * t + 2.0 * cp * np.sqrt(np.maximum(0.0, 1.0 - t * t))

    # stationary points satisfy (c_par - beta t)^2 (1 - t^2) = cp^2 t^2
    coeffs = [
        -(beta**2),
        2.0 * c_par * beta,
        beta**2 - c_par**2 - cp**2,
        -2.0 * c_par * beta,
        c_par**2,
    ]
    roots = np.roots(coeffs)
    cand = [r.real for r in roots if abs(r.imag) < 1e-9 and -1.0 <= r.real <= 1.0]
    cand += [-1.0, 1.0] + list(np.linspace(-0.999, 0.999, 21))
    t = max(cand, key=g)
    s = np.sqrt(max(0.0, 1.0 - t * t))
    return t * a_hat + s * p_hat


def optimize_local_directions(
    psi: PureState, max_iters: int = 100, restarts: int = 10, seed=None
) -> tuple[float, np.ndarray]:
    """Maximize 4*Var of a one-direction-per-qubit generator over directions.

    Coordinate ascent: with every other qubit fixed, the objective restricted
    to one direction is a sphere-constrained quadratic that is maximized
    exactly, so the value never decreases. Runs from ``restarts`` random
    starting points plus the best collective direction, which guarantees the
    result is at least the collective optimum.
    """
    if not isinstance(psi, PureState):
        raise TypeError("local-direction optimization needs a pure state")
    n = psi.num_qubits
    rng = np.random.default_rng(seed)
    # (N, 3, d) applications of the half-Paulis; fixed for the whole search
    paulis_psi = np.stack([_apply_half_pauli(psi.amplitudes, l, n) for l in range(n)])
    means = np.real(np.einsum("x,lix->li", psi.amplitudes.conj(), paulis_psi))

    def objective(h_psi):
        mean = float(np.real(np.vdot(psi.amplitudes, h_psi)))
        return 4.0 * (float(np.real(np.vdot(h_psi, h_psi))) - mean**2)

    collective_value, collective_dir = qfi_max(psi)
    starts = [np.tile(collective_dir, (n, 1))]
    for _ in range(restarts):
        raw = rng.standard_normal((n, 3))
        starts.append(raw / np.linalg.norm(raw, axis=1, keepdims=True))

    best_value, best_dirs = -np.inf, starts[0]
    for dirs in starts:
        dirs = dirs.copy()
        h_psi = np.einsum("li,lix->x", dirs, paulis_psi)
        value = objective(h_psi)
        for _ in range(max_iters):
            for l in range(n):
                b_psi = h_psi - dirs[l] @ paulis_psi[l]
                b_mean = float(np.real(np.vdot(psi.amplitudes, b_psi)))
                cross = np.real(paulis_psi[l].conj() @ b_psi)
                c = cross - means[l] * b_mean
                dirs[l] = _max_on_sphere(means[l], c, dirs[l])
                h_psi = b_psi + dirs[l] @ paulis_psi[l]
            new_value = objective(h_psi)
            if new_value - value < 1e-10:
                value = max(value, new_value)
                break
            value = new_value
        if value > best_value:
            best_value, best_dirs = value, dirs
    return float(best_value), best_dirs
