"""Exact noncommutative polynomial algebra and realizability checks for polynomial QSDEs."""
from .calculus import (AxisMap, BasisSelector, CurlReport, GradVector, P, Pbar, curl_test, deriv,
                       deriv_axis, expand_integral_series, potential_from_gradient, project,
                       quotient_part, zero_integral)
from .errors import (BadExponent, CapRequired, DegreeOverflow, DegreeTooHighForDim,
                     DimensionMismatch, ExpressionSyntaxError, InternalContractViolation, InvalidS,
                     ModeMismatch, NcqsdeError, NotAGradient, NotCompletable, NotConservative,
                     NotHermitianizable, ParseError, SeriesArgumentError, UnknownVariable)
from .fock import FockConfig, agree, evaluate, generator_matrices
from .ncpoly import (I, NcPoly, ONE, Scalar, VarId, Word, ZERO, adjoint, commutator, generators,
                     herm, antiherm, is_self_adjoint, mul, normal_order, p, q)
from .parser import elaborate, expand_words, parse, parse_poly
from .realize import (LinearModel, QsdeModel, Realization, RealizabilityReport, check_realizable,
                      commutation_preservation, compute_fL, compute_Z_L, is_commutator_conservative,
                      linear_check, potential_operator, reconstruct_fg, sigma)
from .synth import SynthesisProblem, complete_drift, synthesized_hamiltonian

__all__ = [
    "AxisMap",
    "BasisSelector",
    "CurlReport",
    "GradVector",
    "P",
    "Pbar",
    "curl_test",
    "deriv",
    "deriv_axis",
    "expand_integral_series",
    "potential_from_gradient",
    "project",
    "quotient_part",
    "zero_integral",
    "BadExponent",
    "CapRequired",
    "DegreeOverflow",
    "DegreeTooHighForDim",
    "DimensionMismatch",
    "ExpressionSyntaxError",
    "InternalContractViolation",
    "InvalidS",
    "ModeMismatch",
    "NcqsdeError",
    "NotAGradient",
    "NotCompletable",
    "NotConservative",
    "NotHermitianizable",
    "ParseError",
    "SeriesArgumentError",
    "UnknownVariable",
    "FockConfig",
    "agree",
    "evaluate",
    "generator_matrices",
    "I",
    "NcPoly",
    "ONE",
    "Scalar",
    "VarId",
    "Word",
    "ZERO",
    "adjoint",
    "commutator",
    "generators",
    "herm",
    "antiherm",
    "is_self_adjoint",
    "mul",
    "normal_order",
    "p",
    "q",
    "elaborate",
    "expand_words",
    "parse",
    "parse_poly",
    "LinearModel",
    "QsdeModel",
    "Realization",
    "RealizabilityReport",
    "check_realizable",
    "commutation_preservation",
    "compute_fL",
    "compute_Z_L",
    "is_commutator_conservative",
    "linear_check",
    "potential_operator",
    "reconstruct_fg",
    "sigma",
    "SynthesisProblem",
    "complete_drift",
    "synthesized_hamiltonian",
]
