"""Seeded Monte-Carlo detection campaigns at desk scale.

Every sample index owns its RNG stream derived from the campaign seed, so
percentages are byte-reproducible and independent of the worker count. The
same campaigns back the ``qfisher table2`` / ``qfisher table3`` CLI calls;
full-scale runs just raise --samples.
"""

from qfisher.campaigns import run_table2, run_table3

samples = 20_000

print(f"random pure 3-qubit states, {samples} samples, seed 0")
print(f"{'criterion':>12} {'detected %':>10} {'stderr':>8}")
for row in run_table2(samples=samples, seed=0):
    print(f"{row.name:>12} {row.percent:>10.2f} {row.stderr:>8.2f}")

print("""
Notes: the QFI rows use the best collective spin direction, the averaged
rows the Bloch-sphere mean, the antidiagonal test and the witness act in
the computational basis. Per-state optimized variants are available via
run_table2(mode="local") at small sample counts.
""")

print(f"X-form states violating the first antidiagonal condition ({samples} samples)")
first = run_table3(samples=samples, seed=0, mode="dme")
for row in first:
    print(f"{row.name:>12} {row.percent:>10.2f} {row.stderr:>8.2f}")

print(f"\nsame family, violating any of the four conditions")
second = run_table3(samples=samples, seed=0, mode="dme_family")
for row in second:
    print(f"{row.name:>12} {row.percent:>10.2f} {row.stderr:>8.2f}")

print("\nThe witness leads, the max-direction criterion follows, the averaged")
print("one trails; widening the family dilutes the corner weight and every")
print("detection rate drops.")
