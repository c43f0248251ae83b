"""Validated-numerics certification of generically unfolding quadratic
homoclinic tangencies in one-parameter families of planar maps.

The library verifies, rigorously on machine arithmetic, heteroclinic chains
of covering relations with cone conditions for the projectivized dynamics of
a planar map family, plus the disk parameterizations of the center-(un)stable
manifolds that pin the tangency parameter.  The bundled drivers reproduce the
full certification for the Henon family (``tangency.henon``) and for an
analytically solvable model map (``tangency.toy``); the ``tangency`` CLI
exposes both.
"""

from tangency.covering import (
    BoxMap,
    CoveringCertificate,
    VerificationInconclusive,
    check_chain,
    check_covering,
)
from tangency.cones import (
    ConeCertificate,
    check_cone_chain,
    check_cone_link,
    cone_matrix,
    rump_positive_definite,
)
from tangency.hset import HSet, QuadraticForm
from tangency.interval import HALF_PI, PI, Interval, IntervalError
from tangency.jets import Jet
from tangency.kernels import BACKEND
from tangency.linalg import IntervalMatrix, IntervalVector, det4, inverse_enclosure
from tangency.manifold import DiskCertificate, verify_disk
from tangency.projective import (
    ChartError,
    ChartMap,
    ChartPoint,
    PlanarMapFamily,
    direction_to_angle,
)

__version__ = "0.1.0"

__all__ = [
    "BACKEND",
    "BoxMap",
    "ChartError",
    "ChartMap",
    "ChartPoint",
    "ConeCertificate",
    "CoveringCertificate",
    "DiskCertificate",
    "HALF_PI",
    "HSet",
    "Interval",
    "IntervalError",
    "IntervalMatrix",
    "IntervalVector",
    "Jet",
    "PI",
    "PlanarMapFamily",
    "QuadraticForm",
    "VerificationInconclusive",
    "check_chain",
    "check_cone_chain",
    "check_cone_link",
    "check_covering",
    "cone_matrix",
    "det4",
    "direction_to_angle",
    "inverse_enclosure",
    "rump_positive_definite",
    "verify_disk",
    "__version__",
]
