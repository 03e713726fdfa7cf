"""Detecting bound entanglement with the direction-averaged QFI.

Two families stay positive under partial transposition across key cuts, so
no GHZ state can be distilled from them; the averaged criterion still flags
them while the best single direction never clears the separable ceiling.
"""

import numpy as np

import qfisher as qf
from qfisher.campaigns import run_bound_entangled_scan

np.set_printoptions(precision=4, suppress=True)

print("single-flip mixture family")
for n in (4, 5, 6, 8):
    rho = qf.duer_state(n)
    value, _ = qf.qfi_max(rho)
    avg = qf.qfi_avg(rho)
    print(f"  N={n}: QFI max {value:7.4f} (< N = {n})   "
          f"avg {avg:7.4f} (> 2N/3 = {2*n/3:.4f})")
print("  -> useless along every fixed direction, useful on direction average")
print("  N=3 is the exception: avg =", round(qf.qfi_avg(qf.duer_state(3)), 4),
      "stays below", round(2.0, 4))

print("\nPauli-string family (two-level corner mixtures)")
for pairs in (2, 3, 4):
    n = 2 * pairs
    rho = qf.smolin_state(pairs)
    gamma = qf.qfi_matrix(rho)
    print(f"  N={n}: spin-QFI matrix = {np.diag(gamma.matrix)}  avg = {gamma.average():.4f}")

print("\nPPT X-form family: positive partial transpose on every single-qubit cut")
rho = qf.bound_entangled_ghz_diagonal(2.0, 3.0, 5.0)
for q in range(3):
    pt_min = np.linalg.eigvalsh(qf.partial_transpose(rho, [q]))[0]
    print(f"  cut qubit {q}: smallest PT eigenvalue {pt_min:.6f}")

print("\nrandom scan over that family (weights uniform on (0.1, 10)):")
rows = {r.name: r for r in run_bound_entangled_scan(samples=5000, seed=0)}
print(f"  PPT on all cuts: {rows['ppt_all_cuts'].detected}/5000")
print(f"  flagged by max-direction QFI: {rows['fq_2'].detected}")
print(f"  flagged by averaged QFI:      {rows['fq_avg_2'].detected}")
print("  -> neither Fisher criterion sees this PPT family")
