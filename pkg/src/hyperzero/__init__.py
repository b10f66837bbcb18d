"""Zero-free regions and zeros of hypergraph independence polynomials."""

from .errors import (
    DegenerateRatioError,
    HyperzeroError,
    InputError,
    NumericError,
    PoleError,
    Refusal,
    ResourceError,
    TheoremViolation,
)
from .hypergraph import Hypergraph, classify, load
from .partition import ratio, z_eval, z_poly
from .poly import Polynomial
from .sphere import INF

__version__ = "0.1.0"

__all__ = [
    "DegenerateRatioError",
    "HyperzeroError",
    "Hypergraph",
    "INF",
    "InputError",
    "NumericError",
    "PoleError",
    "Polynomial",
    "Refusal",
    "ResourceError",
    "TheoremViolation",
    "classify",
    "load",
    "ratio",
    "z_eval",
    "z_poly",
]
