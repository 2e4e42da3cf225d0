"""Exact arithmetic substrate: scalars, polynomials, intervals, algebraic numbers."""

from .algebraic import AlgebraicNumber, isolate_real_roots, verify_algebraic_identity
from .gaussian import GR_I, GR_ONE, GR_ZERO, GaussianRational, Rational, as_rational
from .interval import ComplexInterval, Interval, eval_interval
from .multipoly import (
    MultiPoly,
    derivative,
    discriminant,
    exact_div,
    poly_arith,
    resultant,
)

__all__ = [
    "AlgebraicNumber",
    "ComplexInterval",
    "GR_I",
    "GR_ONE",
    "GR_ZERO",
    "GaussianRational",
    "Interval",
    "MultiPoly",
    "Rational",
    "as_rational",
    "derivative",
    "discriminant",
    "eval_interval",
    "exact_div",
    "isolate_real_roots",
    "poly_arith",
    "resultant",
    "verify_algebraic_identity",
]
