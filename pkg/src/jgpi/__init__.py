"""Exact verification of graded polynomial identities of Jordan algebras.

Covers the symmetric 2x2 matrices with the nonscalar grading and the
algebras of a symmetric bilinear form ``B_n`` with the scalar grading.
"""
from .expr import ParseError, format_expression, parse_expression
from .free import (JordanPoly, MultiDegree, associator, component_basis, long_associator,
                   multihomogeneous_components, multiply, shift_substitute)
from .models import (BnElement, BnScalar, J2Element, J2Nonscalar, eval_bn, eval_j2,
                     is_graded_identity_bn_scalar, is_graded_identity_j2_nonscalar,
                     is_weak_identity_bn)
from .tideal import (GeneratorSet, compare_components, generator_set, identity_component,
                     ideal_component, is_member, nonscalar_j2, scalar_b, scalar_bn)

__version__ = "0.1.0"

__all__ = [
    "ParseError", "format_expression", "parse_expression",
    "JordanPoly", "MultiDegree", "associator", "component_basis", "long_associator",
    "multihomogeneous_components", "multiply", "shift_substitute",
    "BnElement", "BnScalar", "J2Element", "J2Nonscalar", "eval_bn", "eval_j2",
    "is_graded_identity_bn_scalar", "is_graded_identity_j2_nonscalar", "is_weak_identity_bn",
    "GeneratorSet", "compare_components", "generator_set", "identity_component",
    "ideal_component", "is_member", "nonscalar_j2", "scalar_b", "scalar_bn",
]
