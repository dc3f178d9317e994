"""Exact Fourier expansions of Siegel modular forms and mod p singularity checks."""

from .congruence import pipeline, report, theorem_check
from .errors import ModSingularError
from .expansion import FourierExpansion, LevelSpec, get_coeff
from .symmat import HalfIntegralMatrix, canonical, enumerate_classes
from .theta import catalog, poly_theta, scalar_theta
from .weylrep import build_rep, rep_matrix

__all__ = [
    "FourierExpansion", "HalfIntegralMatrix", "LevelSpec", "ModSingularError",
    "build_rep", "canonical", "catalog", "enumerate_classes", "get_coeff",
    "pipeline", "poly_theta", "rep_matrix", "report", "scalar_theta", "theorem_check",
]
