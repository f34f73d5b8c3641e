"""Time-optimal navigation on slippery slopes with the (eta, etaTilde)-slope metric."""

from .convexity import bound_surface, gbar_bound, max_steepness
from .errors import (AdmissibilityError, ConvexityViolation, DegenerateDenominator, DomainError,
                     DriftError, ExprError, NumericError, RootCountError, SingularFrame,
                     SlopeNavError)
from .expr import Jet2, eval_jet2, parse
from .front import Envelope, TimeFront, envelope_bounds, time_front
from .geodesic import (GeodesicPath, GeodesicState, SprayTerms, initial_velocity, integrate,
                       path_time, spray, spray_terms)
from .kernels import BACKEND
from .metric import (IndicatrixPoint, MetricEval, indicatrix, matsumoto_oracle, metric_value,
                     navigation_condition, randers_oracle, slope_metric)
from .params import (CORNERS, TractionParams, WindDecomposition, classify, reduction_coefficients,
                     wind_decomposition)
from .surface import (CurvatureData, PointGeometry, Surface, alpha_beta, curvature_data,
                      parse_surface, point_geometry)

__version__ = "0.1.0"

__all__ = [
    "AdmissibilityError", "BACKEND", "CORNERS", "ConvexityViolation", "CurvatureData",
    "DegenerateDenominator", "DomainError", "DriftError", "Envelope", "ExprError",
    "GeodesicPath", "GeodesicState", "IndicatrixPoint", "Jet2", "MetricEval", "NumericError",
    "PointGeometry", "RootCountError", "SingularFrame", "SlopeNavError", "SprayTerms", "Surface",
    "TimeFront", "TractionParams", "WindDecomposition", "alpha_beta", "bound_surface",
    "classify", "curvature_data", "envelope_bounds", "eval_jet2", "gbar_bound", "indicatrix",
    "initial_velocity", "integrate", "matsumoto_oracle", "max_steepness", "metric_value",
    "navigation_condition", "parse", "parse_surface", "path_time", "point_geometry",
    "randers_oracle", "reduction_coefficients", "slope_metric", "spray", "spray_terms",
    "time_front", "wind_decomposition",
]
