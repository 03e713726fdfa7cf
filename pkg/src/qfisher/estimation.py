"""Phase-estimation simulator: evolve, measure, estimate, compare to limits.

A probe state is conjugated by exp(-i theta H), a POVM is sampled m times,
and a grid maximum-likelihood estimator recovers theta. Repeating the
procedure gives an empirical standard deviation to hold against the
Cramer-Rao bound 1 / sqrt(m F) and the shot-noise / Heisenberg floors.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .core import DensityMatrix, PureState, _as_matrix, _state_matrix
from .fisher import Povm, model_probabilities

__all__ = [
    "EstimationRun",
    "evolve",
    "sample_outcomes",
    "ml_estimate",
    "precision_limits",
    "run_phase_estimation",
]


@dataclass(frozen=True)
class EstimationRun:
    """Outcome of repeated phase estimates at one true phase."""

    true_theta: float
    m: int
    trials: int
    estimator_values: np.ndarray
    empirical_std: float

    def __post_init__(self):
        vals = np.asarray(self.estimator_values, dtype=float)
        if vals.size != self.trials:
            raise ValueError("one estimate per trial required")
        vals = vals.copy()
        vals.setflags(write=False)
        object.__setattr__(self, "estimator_values", vals)
        if self.empirical_std < 0:
            raise ValueError("standard deviation cannot be negative")


def evolve(state, generator, theta: float) -> DensityMatrix:
    """Conjugate a state by exp(-i theta G) through the eigenbasis of G."""
    g = _as_matrix(generator)
    rho = _state_matrix(state)
    if rho.shape != g.shape:
        raise ValueError(f"dimension mismatch: state {rho.shape}, generator {g.shape}")
    num_qubits = state.num_qubits if isinstance(state, (PureState, DensityMatrix)) else int(
        round(np.log2(g.shape[0]))
    )
    lam, v = np.linalg.eigh(g)
    phases = np.exp(-1j * theta * lam)
    u = (v * phases) @ v.conj().T
    return DensityMatrix(num_qubits, u @ rho @ u.conj().T)


def sample_outcomes(state, povm: Povm, shots: int, rng: np.random.Generator) -> np.ndarray:
    """Multinomial counts of POVM outcomes over ``shots`` repetitions."""
    if shots < 1:
        raise ValueError("need at least one shot")
    if not isinstance(povm, Povm):
        raise TypeError("povm must be a Povm instance")
    rho = _state_matrix(state)
    probs = np.array([float(np.real(np.trace(rho @ e))) for e in povm.elements])
    if probs.min() < -1e-9 or probs.max() > 1.0 + 1e-9:
        raise ValueError(f"outcome probabilities out of range: {probs}")
    probs = np.clip(probs, 0.0, None)
    probs /= probs.sum()
    return rng.multinomial(shots, probs)


def ml_estimate(counts, state, generator, povm: Povm, theta_grid) -> float:
    """Grid maximum-likelihood phase estimate with one parabolic refinement.

    Ties resolve to the lowest grid point; a likelihood that does not depend
    on theta at all is an error since the model cannot identify the phase.
    """
    counts = np.asarray(counts, dtype=float)
    grid = np.asarray(theta_grid, dtype=float)
    if grid.ndim != 1 or grid.size < 3:
        raise ValueError("theta grid needs at least three points")
    probs = model_probabilities(state, generator, povm, grid)
    if np.max(probs.max(axis=0) - probs.min(axis=0)) < 1e-14:
        raise ValueError("flat likelihood: outcome probabilities do not depend on theta")
    loglik = counts @ np.log(np.clip(probs, 1e-300, None)).T
    peak = int(np.argmax(loglik))
    if peak == 0 or peak == grid.size - 1:
        return float(grid[peak])
    left, mid, right = loglik[peak - 1], loglik[peak], loglik[peak + 1]
    denom = left - 2.0 * mid + right
    if abs(denom) < 1e-300:
        return float(grid[peak])
    step = grid[peak + 1] - grid[peak]
    offset = 0.5 * (left - right) / denom
    return float(grid[peak] + np.clip(offset, -1.0, 1.0) * step)


def precision_limits(num_qubits: int, m: int) -> tuple[float, float]:
    """Shot-noise and Heisenberg phase-uncertainty floors for N qubits, m shots."""
    if num_qubits < 1 or m < 1:
        raise ValueError("qubit count and repetitions must be positive")
    return 1.0 / np.sqrt(m * num_qubits), 1.0 / (np.sqrt(m) * num_qubits)


def run_phase_estimation(
    state,
    generator,
    povm: Povm,
    true_theta: float,
    m: int,
    trials: int,
    seed=0,
    window: tuple[float, float] | None = None,
    grid_points: int = 512,
) -> EstimationRun:
    """Simulate ``trials`` independent m-shot estimates of one fixed phase.

    The likelihood grid spans ``window`` (callers restrict it to a stretch
    where the fringe pattern is unambiguous); each trial draws from its own
    seed-and-index RNG stream so results do not depend on scheduling.
    """
    if window is None:
        raise ValueError("an identifiability window (lo, hi) around the phase is required")
    lo, hi = window
    if not lo < true_theta < hi:
        raise ValueError("true phase must lie inside the estimation window")
    grid = np.linspace(lo, hi, grid_points)
    evolved = evolve(state, generator, true_theta)
    estimates = np.empty(trials)
    for trial in range(trials):
        rng = np.random.default_rng([seed, trial])
        counts = sample_outcomes(evolved, povm, m, rng)
        estimates[trial] = ml_estimate(counts, state, generator, povm, grid)
    return EstimationRun(
        true_theta=float(true_theta),
        m=int(m),
        trials=int(trials),
        estimator_values=estimates,
        empirical_std=float(np.std(estimates, ddof=1)) if trials > 1 else 0.0,
    )
