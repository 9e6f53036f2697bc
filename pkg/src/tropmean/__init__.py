"""Exact tropical Fréchet means, mean polytropes and optimality certificates.

Everything is computed in rational arithmetic: distances, means, polytrope
descriptions and certificates are exact values, never floating point
approximations.
"""

from .certify import (
    AffineForm,
    Certificate,
    QuadraticForm,
    QuadraticPiece,
    active_pieces,
    find_certificate,
    min_quadratic,
    verify_certificate,
)
from .core import (
    Rational,
    SampleSet,
    TorusPoint,
    as_rational,
    canonicalize,
    trop_add,
    trop_dist,
    trop_scale,
)
from .errors import (
    BudgetExceeded,
    EmptyPolytrope,
    NotOptimal,
    ParseError,
    TropmeanError,
    Unbounded,
)
from .frechet import (
    FrechetResult,
    exact_frechet,
    fm_polytrope,
    greedy_frechet,
    objective,
    two_point_mean,
)
from .oracle import brute_force_frechet
from .polytrope import (
    NEG_INF,
    PolytropeMatrix,
    SegmentDecomposition,
    ball_to_polytrope,
    intersect,
    kleene_star,
    membership,
    pseudovertices,
    segment_breakpoints,
    tropical_vertices,
)

__version__ = "0.1.0"

__all__ = [
    "AffineForm",
    "BudgetExceeded",
    "Certificate",
    "EmptyPolytrope",
    "FrechetResult",
    "NEG_INF",
    "NotOptimal",
    "ParseError",
    "PolytropeMatrix",
    "QuadraticForm",
    "QuadraticPiece",
    "Rational",
    "SampleSet",
    "SegmentDecomposition",
    "TorusPoint",
    "TropmeanError",
    "Unbounded",
    "active_pieces",
    "as_rational",
    "ball_to_polytrope",
    "brute_force_frechet",
    "canonicalize",
    "exact_frechet",
    "find_certificate",
    "fm_polytrope",
    "greedy_frechet",
    "intersect",
    "kleene_star",
    "membership",
    "min_quadratic",
    "objective",
    "pseudovertices",
    "segment_breakpoints",
    "trop_add",
    "trop_dist",
    "trop_scale",
    "tropical_vertices",
    "two_point_mean",
    "verify_certificate",
]
