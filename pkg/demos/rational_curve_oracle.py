"""The rational normal curve corpus, where the answer is exact for every center.

For rational normal curves the index of any projection equals the
secant rank of the center minus 3, with no genericity caveat.  That
makes them the end-to-end oracle for this pipeline: every cell below
must come out exact in every trial.  This is the same machinery the
elliptic experiments use; only the point source differs.
"""

import numpy as np

from secsyz import DEFAULT_PRIME, Fp
from secsyz.experiments import admissible_witness_sizes
from secsyz.geometry import default_sample_size, make_center, project, rnc_points
from secsyz.gradedring import interpolate
from secsyz.koszul import gl_index

field = Fp(DEFAULT_PRIME)
print(f"rational normal curves over p = {field.p}, three centers per cell")
print(f"{'d':>3} {'s':>3} {'indices':>12} {'verdict':>8}")

for d in (5, 6, 7, 8):
    for s in admissible_witness_sizes("rational", d):
        indices = []
        for trial in range(3):
            rng = np.random.default_rng(1000 * d + 10 * s + trial)
            points = rnc_points(field, d, default_sample_size("rational", d), rng)
            image = project(points, make_center(points, s, rng), rng)
            indices.append(gl_index(interpolate(image)).index)
        verdict = "exact" if all(ix == s - 3 for ix in indices) else "MISMATCH"
        print(f"{d:>3} {s:>3} {str(indices):>12} {verdict:>8}")
