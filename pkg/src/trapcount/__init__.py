"""Exact counting of Gelfand-Tsetlin and monotone trapezoids."""

from .errors import ConfigError, DomainError, ResourceError
from .field import FieldElem, RHO
from .formulas import CountResult, gt_count, gt_poly, mt_count, mt_poly, overline_gt, overline_gt_poly
from .multipoly import MultiPoly, definite_sum, delta, parse_poly, shift
from .pfaffian import TriArray, pf_elimination, pf_laplace, pf_matchings
from .powerseries import BiSeries, UniSeries, build_hidden_series, check_equation
from .trapezoids import SignMatrix, Trapezoid, enumerate_gt, from_sign_matrix, to_sign_matrix
from .verify import CheckReport

__all__ = [
    "BiSeries",
    "CheckReport",
    "ConfigError",
    "CountResult",
    "DomainError",
    "FieldElem",
    "MultiPoly",
    "RHO",
    "ResourceError",
    "SignMatrix",
    "Trapezoid",
    "TriArray",
    "UniSeries",
    "build_hidden_series",
    "check_equation",
    "definite_sum",
    "delta",
    "enumerate_gt",
    "from_sign_matrix",
    "gt_count",
    "gt_poly",
    "mt_count",
    "mt_poly",
    "overline_gt",
    "overline_gt_poly",
    "parse_poly",
    "pf_elimination",
    "pf_laplace",
    "pf_matchings",
    "shift",
    "to_sign_matrix",
]

__version__ = "0.1.0"
