"""Exact computations for connections with skew-symmetric torsion.

Forms, Clifford algebra and spin representations over Q(sqrt 3)(i), the
zero-order part of the Casimir operator, Nomizu curvature of reductive
homogeneous spaces and a PBW engine for invariant differential operators.
"""

from .scalar import ComplexScalar, Scalar, format_scalar, parse_scalar
from .exterior import Form, hodge_star, hook, inner, norm2, sigma_T, wedge
from .clifford import CliffordElement, clifford_mul, embed
from .spinrep import act, build_generators, exact_spectrum, spectrum, split_by
from .casimir import (
    GeometryRecord,
    einstein_sasakian_gap,
    kp_constant,
    zero_order_general,
    zero_order_parallel,
)
from .homogeneous import MetricReductiveAlgebra, canonical_torsion, invariant_d, nomizu_curvature
from .uea import LieRelations, OperatorPolynomial, multiply, reduce_to_casimir

__version__ = "0.1.0"

__all__ = [
    "ComplexScalar", "Scalar", "format_scalar", "parse_scalar",
    "Form", "hodge_star", "hook", "inner", "norm2", "sigma_T", "wedge",
    "CliffordElement", "clifford_mul", "embed",
    "act", "build_generators", "exact_spectrum", "spectrum", "split_by",
    "GeometryRecord", "einstein_sasakian_gap", "kp_constant", "zero_order_general", "zero_order_parallel",
    "MetricReductiveAlgebra", "canonical_torsion", "invariant_d", "nomizu_curvature",
    "LieRelations", "OperatorPolynomial", "multiply", "reduce_to_casimir",
]
