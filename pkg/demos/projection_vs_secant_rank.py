"""How the index of a projected curve tracks the rank of the center.

For a degree-10 elliptic normal curve in P^9 we build centers lying on
the s-th secant variety for every admissible s (a center is an explicit
combination of s curve points, which certifies secant rank <= s), then
project, interpolate, and read off the index.  The index of the image
comes out as s - 3 on the nose, so the projection remembers exactly how
special its center was.  The computed index also certifies rank >= s:
together with the witness the secant rank is pinned exactly.
"""

import numpy as np

from secsyz import DEFAULT_PRIME, Fp
from secsyz.curves import EllipticCurve
from secsyz.geometry import (
    default_sample_size,
    embed_elliptic,
    make_center,
    project,
)
from secsyz.gradedring import interpolate
from secsyz.koszul import gl_index

D = 10
field = Fp(DEFAULT_PRIME)
rng = np.random.default_rng(7)

curve = EllipticCurve.random(field, rng)
points = embed_elliptic(curve, D, default_sample_size("elliptic", D), rng)
print(f"degree-{D} elliptic normal curve in P^{D - 1}, p = {field.p}")
print(f"{'s':>3} {'witness span':>13} {'index':>6} {'s-3':>4} {'rank certified':>15}")

for s in range(3, D // 2 + 1):
    center = make_center(points, s, rng)
    image = project(points, center, rng)
    report = gl_index(interpolate(image))
    certified = report.rank_lower_bound == center.rank_bound
    print(f"{s:>3} {f'P^{s - 1}':>13} {report.index:>6} {s - 3:>4} "
          f"{'yes' if certified else 'no':>15}")
