"""Randomized equivalence test for sums of powers of linear forms.

Decides whether a homogeneous polynomial, given as an evaluation blackbox, is
``sum alpha_i <l_i, x>^d`` for linearly independent forms ``l_i``; reduces to
essential variables first when asked; and recovers the forms numerically.
"""

from .decide import DecisionReport, Stage, decide_equiv, decide_full_slices
from .exactla import FieldMode, Matrix, SingularError
from .kernels import BACKEND
from .minvars import MinvarsReport, decide_waring, derivative_matrix, essential_count_and_basis
from .oracle import Oracle, compose_linear, from_function, from_poly, from_power_sum
from .parsing import ParseError, parse, serialize
from .randcheck import SampleConfig, family_commutes_randomized, random_matrix
from .reconstruct import (
    Decomposition,
    DegenerateSpectrum,
    ReconstructionFailed,
    eigendecompose,
    reconstruct,
)
from .scalarpoly import Poly, UniPoly, power_sum, sum_of_powers
from .slices import SliceFamily, SliceTriple, all_slices, slice_triple, transform_slices

__all__ = [
    "BACKEND",
    "DecisionReport",
    "Decomposition",
    "DegenerateSpectrum",
    "FieldMode",
    "Matrix",
    "MinvarsReport",
    "Oracle",
    "ParseError",
    "Poly",
    "ReconstructionFailed",
    "SampleConfig",
    "SingularError",
    "SliceFamily",
    "SliceTriple",
    "Stage",
    "UniPoly",
    "all_slices",
    "compose_linear",
    "decide_equiv",
    "decide_full_slices",
    "decide_waring",
    "derivative_matrix",
    "eigendecompose",
    "essential_count_and_basis",
    "family_commutes_randomized",
    "from_function",
    "from_poly",
    "from_power_sum",
    "parse",
    "power_sum",
    "random_matrix",
    "reconstruct",
    "serialize",
    "slice_triple",
    "sum_of_powers",
    "transform_slices",
]
