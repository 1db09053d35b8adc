"""Exact sails, LLS sequences and Conway rivers of indefinite binary quadratic forms."""

from qriver.errors import (
    BudgetExceeded,
    ClassificationError,
    DegenerateError,
    InsufficientOverlap,
    InvariantViolation,
    OutOfDomain,
    ParseError,
    QriverError,
)
from qriver.exact import QuadraticSurd, parse_rational, parse_surd
from qriver.lattice import LatticeVector, UnimodularMap
from qriver.cfrac import ContinuedFraction, FareyFraction
from qriver.forms import BinaryQuadraticForm, Classification
from qriver.sail import LLSWindow, NormalizedForm, SailPolyline
from qriver.topograph import RiverPath, Superbase, TopographEdge
from qriver.concord import MatchReport, align, check_theorem

__version__ = "0.1.0"

__all__ = [
    "BinaryQuadraticForm",
    "BudgetExceeded",
    "Classification",
    "ClassificationError",
    "ContinuedFraction",
    "DegenerateError",
    "FareyFraction",
    "InsufficientOverlap",
    "InvariantViolation",
    "LLSWindow",
    "LatticeVector",
    "MatchReport",
    "NormalizedForm",
    "OutOfDomain",
    "ParseError",
    "QriverError",
    "QuadraticSurd",
    "RiverPath",
    "SailPolyline",
    "Superbase",
    "TopographEdge",
    "UnimodularMap",
    "align",
    "check_theorem",
    "parse_rational",
    "parse_surd",
]
