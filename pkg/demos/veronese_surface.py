"""A two-dimensional contrast case: projections of the cubic Veronese surface.

For curves the index of a projection grows with the secant rank of the
center.  In higher dimension that pattern is not automatic, but this
surface still shows a clean two-step behavior: centers spanned by three
surface points give index 0, while general centers (secant rank 4)
give index exactly 1, never more, with beta[2,4] != 0 as the witness
that 1 is sharp.
"""

import numpy as np

from secsyz import DEFAULT_PRIME, Fp
from secsyz.geometry import (
    default_sample_size,
    make_center,
    make_general_center,
    project,
    veronese_points,
)
from secsyz.gradedring import interpolate
from secsyz.koszul import gl_index

field = Fp(DEFAULT_PRIME)
print(f"cubic Veronese surface in P^9 over p = {field.p}")

for label, use_witness in (("general center (rank 4)", False),
                           ("center on three surface points", True)):
    indices = []
    strands = None
    for trial in range(4):
        rng = np.random.default_rng(50 + trial)
        surface = veronese_points(field, default_sample_size("veronese", None), rng)
        center = (make_center(surface, 3, rng) if use_witness
                  else make_general_center(surface, rng))
        report = gl_index(interpolate(project(surface, center, rng)))
        indices.append(report.index)
        strands = report.strand
    print(f"  {label}: indices over 4 trials = {indices}, "
          f"last strand values = {strands}")
