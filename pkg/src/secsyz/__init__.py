"""secsyz: exact prime-field syzygy experiments for projected curves.

The package measures how the Green-Lazarsfeld index of a linearly
projected variety tracks the secant rank of the projection center,
entirely in exact arithmetic over large prime fields: embed sample
points, build a center with a secant-rank witness, project, interpolate
the graded ideal, and read the index off Koszul strand homology, always
at two primes.
"""

from .gfp import CROSSCHECK_PRIME, DEFAULT_PRIME, DEFAULT_PRIMES, TIEBREAK_PRIME, Fp
from .linalg import Matrix, kernel_basis, mat_mul, rank, rref
from .curves import EllipticCurve, rr_basis
from .geometry import (
    EmbeddedPointSet,
    ProjectionCenter,
    embed_elliptic,
    make_center,
    make_general_center,
    project,
    rnc_points,
    span_dim,
    veronese_points,
)
from .gradedring import GradedData, HilbertCheckError, interpolate, mult_by_coordinate
from .koszul import (
    BettiTable,
    IndexReport,
    betti_strand,
    betti_table,
    exterior_basis,
    gl_index,
    koszul_differential,
)
from .experiments import (
    CampaignSummary,
    TrialRecord,
    run_baseline_unprojected,
    run_index_trial,
    run_rnc_crosscheck,
    run_semicontinuity_probe,
    run_thm11_scan,
    run_thm12,
    run_thm13,
    run_veronese_example,
)

__version__ = "0.1.0"
