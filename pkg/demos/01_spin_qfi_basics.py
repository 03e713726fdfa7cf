"""Quantum Fisher information of multiqubit states, step by step.

Builds a few standard states, computes the QFI for chosen generators, and
shows the 3x3 spin-QFI matrix whose quadratic form covers every collective
spin direction at once.
"""

import numpy as np

import qfisher as qf

np.set_printoptions(precision=6, suppress=True)

# A GHZ state evolving under the collective J_z picks up phase N times
# faster than any single qubit, which shows up as QFI = N^2.
for n in (2, 3, 4, 6):
    state = qf.ghz(n)
    value = qf.qfi(qf.density_from_pure(state), qf.collective_spin(n, "z"))
    print(f"GHZ on {n} qubits: QFI[J_z] = {value:.6f}  (N^2 = {n**2})")

# A product state caps at QFI = N: the shot-noise boundary.
print()
plus = qf.plus_state(4)
print("product |+>^4: QFI[J_z] =", round(qf.qfi(qf.density_from_pure(plus), qf.collective_spin(4, "z")), 6))

# The spin-QFI matrix summarizes every collective direction. Its largest
# eigenvalue is the best collective QFI; its trace / 3 is the average over
# the Bloch sphere.
print()
for label, state in [
    ("|1>^4", qf.ones_state(4)),
    ("GHZ_4", qf.ghz(4)),
    ("Dicke(4,2)", qf.dicke(4, 2)),
    ("psi_s4(+)", qf.psi_s4("+")),
]:
    gamma = qf.qfi_matrix(state)
    best, direction = gamma.max_direction()
    print(f"{label:12s} matrix diag = {np.diag(gamma.matrix)}  "
          f"max = {best:.4f} along {direction}  avg = {gamma.average():.4f}")

# For pure states the collective optimum can be improved by giving every
# qubit its own rotation axis; for symmetric states there is nothing to gain.
print()
psi = qf.tensor(qf.plus_state(1), qf.ones_state(1))
value, dirs = qf.optimize_local_directions(psi, seed=0)
print("per-qubit optimization on |+>|1>:", round(value, 6), "(collective gives",
      round(qf.qfi_max(psi)[0], 6), ")")
print("optimal local axes:\n", dirs)

# Monte-Carlo averaging over random directions converges to trace / 3.
print()
mc = qf.qfi_avg_montecarlo(qf.ghz(4), 20_000, seed=1)
print(f"MC direction average for GHZ_4: {mc:.4f}  (exact {qf.qfi_avg(qf.ghz(4)):.4f})")
