"""Projections from uniformly random centers.

A random point of P^(d-1) has the largest possible secant rank, the
order ceil(d/2) of the curve, so the projected curve should realize the
top of the index range: ceil(d/2) - 3.  Degrees 5 and 6 therefore give
index 0 (the image needs a cubic generator), and each later pair of
degrees gains one more step of linear syzygies.
"""

import numpy as np

from secsyz import DEFAULT_PRIME, Fp
from secsyz.curves import EllipticCurve
from secsyz.geometry import (
    default_sample_size,
    embed_elliptic,
    make_general_center,
    project,
)
from secsyz.gradedring import interpolate
from secsyz.koszul import gl_index

field = Fp(DEFAULT_PRIME)
print(f"p = {field.p}")
print(f"{'d':>3} {'order':>6} {'index':>6} {'expected':>9}  strand values")

for d in range(5, 13):
    rng = np.random.default_rng(100 + d)
    curve = EllipticCurve.random(field, rng)
    points = embed_elliptic(curve, d, default_sample_size("elliptic", d), rng)
    image = project(points, make_general_center(points, rng), rng)
    report = gl_index(interpolate(image))
    order = -(-d // 2)
    strands = " ".join(f"b{i},{i + 2}={v}" for i, v in sorted(report.strand.items()))
    print(f"{d:>3} {order:>6} {report.index:>6} {order - 3:>9}  {strands}")
