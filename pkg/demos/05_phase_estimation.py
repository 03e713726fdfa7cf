"""Phase estimation end to end: evolve, measure, estimate, compare limits.

The Fisher information is not an abstraction: simulated maximum-likelihood
estimation saturates 1/sqrt(m F), putting GHZ probes at the Heisenberg
scaling and product probes at shot noise.
"""

import numpy as np

import qfisher as qf

n, m, trials = 4, 1000, 200

# entangled probe, parity readout
theta0 = np.pi / (2 * n)
run = qf.run_phase_estimation(
    qf.ghz(n),
    qf.collective_spin(n, "z"),
    qf.parity_povm(n, "x"),
    theta0,
    m=m,
    trials=trials,
    seed=0,
    window=(theta0 - np.pi / (2 * n), theta0 + np.pi / (2 * n)),
)
shot_noise, heisenberg = qf.precision_limits(n, m)
crb = 1.0 / np.sqrt(m * qf.qfi(qf.ghz(n), qf.collective_spin(n, "z")))
print(f"GHZ_{n} probe, {trials} estimates of theta = {theta0:.4f} at m = {m}")
print(f"  empirical std    {run.empirical_std:.6f}")
print(f"  Cramer-Rao bound {crb:.6f}   ratio {run.empirical_std / crb:.3f}")
print(f"  shot noise       {shot_noise:.6f}")
print(f"  Heisenberg       {heisenberg:.6f}")

# separable probe, per-qubit readout: pinned to shot noise
theta1 = np.pi / 2
sep = qf.run_phase_estimation(
    qf.plus_state(n),
    qf.collective_spin(n, "z"),
    qf.x_basis_povm(n),
    theta1,
    m=m,
    trials=trials,
    seed=1,
    window=(theta1 - np.pi / 2, theta1 + np.pi / 2),
)
print(f"\n|+>^{n} probe:")
print(f"  empirical std    {sep.empirical_std:.6f}")
print(f"  shot noise       {shot_noise:.6f}   ratio {sep.empirical_std / shot_noise:.3f}")

# the classical Fisher information of the chosen measurement closes the chain
f_parity = qf.classical_fisher(
    qf.density_from_pure(qf.ghz(n)), qf.collective_spin(n, "z"), qf.parity_povm(n, "x"), theta0
)
print(f"\nparity readout extracts F = {f_parity:.4f} of QFI = {n**2} for GHZ_{n}:")
print("  the measurement is optimal, so the simulated spread matches 1/sqrt(m N^2).")
