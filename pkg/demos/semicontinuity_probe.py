"""Sampling the index over many centers of the same secant rank.

The index, as a function of the center, can only jump DOWN on special
loci, so over many random rank-s centers the maximum is the generic
value s - 3 and lower values are rare.  This runs the packaged probe
at (d, s) = (9, 4) with the full two-prime protocol and prints the
observed distribution and agreement rate.
"""

from secsyz.experiments import run_semicontinuity_probe

summary = run_semicontinuity_probe(d=9, s=4, trials=20, seed=3)
cell = summary.cells[0]

print("index distribution over 20 rank-4 centers of a degree-9 curve:")
for value, count in sorted(cell.distribution.items()):
    print(f"  index {value}: {'#' * count} ({count})")
print(f"maximum observed: {cell.max_index} (generic value is {cell.expected})")
print(f"degenerate trials: {cell.degenerates}")
print(f"two-prime agreement rate: {cell.agreement_rate:.2f}")
print("verdict:", "PASS" if cell.passed else "FAIL")
