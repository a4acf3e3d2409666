"""Exact divisor-class calculus on blowups of the plane.

Divisor classes, characteristic-matrix actions, collision calculus, orbit
dynamics with exact spectra, and machine checks for good-ray families and
their irrational limit rays.  No floating point anywhere; decimal output is
rendering only.
"""

from .quadfield import MixedRadicandError, QuadNum, RadicalSum
from .lattice import (
    DivisorClass,
    MultiplicityProfile,
    ShapeError,
    canonical_class,
    defernex_class,
    exceptional_class,
    line_class,
    is_line_pencil_up_to_permutation,
    line_pencil_class,
    nagata_class,
)
from .cremona import (
    CharMatrix,
    ReductionResult,
    ShapeMatrix,
    bertini_map,
    compose,
    cremona_reduce,
    double_jonquieres_geiser,
    double_jonquieres_map,
    geiser_map,
    jonquieres_map,
    jonquieres_sturm,
    permutation_map,
    quadratic_map,
    shape_action,
    sturm_map,
)
from .dynamics import (
    ConvergenceCertificate,
    EigenDecomposition,
    OrbitSequence,
    Ray,
    SpectrumError,
    certify_convergence,
    char_poly,
    dominant_ray,
    eigen,
    iterate,
)
from . import families, verify

__version__ = "0.1.0"

__all__ = [
    "CharMatrix",
    "ConvergenceCertificate",
    "DivisorClass",
    "EigenDecomposition",
    "MixedRadicandError",
    "MultiplicityProfile",
    "OrbitSequence",
    "QuadNum",
    "RadicalSum",
    "Ray",
    "ReductionResult",
    "ShapeError",
    "ShapeMatrix",
    "SpectrumError",
    "bertini_map",
    "canonical_class",
    "certify_convergence",
    "char_poly",
    "compose",
    "cremona_reduce",
    "defernex_class",
    "dominant_ray",
    "double_jonquieres_geiser",
    "double_jonquieres_map",
    "eigen",
    "exceptional_class",
    "is_line_pencil_up_to_permutation",
    "families",
    "geiser_map",
    "iterate",
    "jonquieres_map",
    "jonquieres_sturm",
    "line_class",
    "line_pencil_class",
    "nagata_class",
    "permutation_map",
    "quadratic_map",
    "shape_action",
    "sturm_map",
    "verify",
]
