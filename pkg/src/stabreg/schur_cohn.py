"""Recursive Schur-Cohn classification of polynomials w.r.t. the unit disk.

A polynomial Q (coefficients ascending) is classified as the finest of:
  Schur                  -- all roots in the open unit disk
  SimpleVonNeumannOnly   -- all roots in the closed disk, unimodular roots
                            simple, and at least one unimodular root
  VonNeumannOnly         -- all roots in the closed disk, some unimodular
                            root multiple
  Outside                -- some root outside the closed disk

The recursion uses the reduced polynomial
    Q^r(z) = sum_{j=1..n} (conj(a_n) a_j - a_0 conj(a_{n-j})) z^{j-1}:
  Q is Schur  iff |lc| > |cc| and Q^r is Schur;
  Q in vN     iff (|lc| > |cc| and Q^r in vN) or (Q^r = 0 and Q' in vN);
  Q in svN    iff (|lc| > |cc| and Q^r in svN) or (Q^r = 0 and Q' is Schur).
Roots at the origin are stripped first (modulus 0 never affects the class),
and the degree-1 base case compares |a_0|^2 with |a_1|^2 exactly.

Three coefficient domains are supported: exact GaussianRational, exact sympy
expressions (for algebraic points such as radicals), and certified
ComplexInterval enclosures (which may return Undecided).
"""

from __future__ import annotations

import enum
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Sequence

import sympy as sp

from .errors import (
    DegreeZeroError,
    LeadingCoefficientAmbiguous,
    UndecidedAtPrecisionCap,
)
from .polycore.gaussian import GaussianRational
from .polycore.interval import ComplexInterval, Interval


class UnitDiskClass(enum.Enum):
    SCHUR = "Schur"
    SIMPLE_VON_NEUMANN_ONLY = "SimpleVonNeumannOnly"
    VON_NEUMANN_ONLY = "VonNeumannOnly"
    OUTSIDE = "Outside"

    @property
    def in_schur(self) -> bool:
        return self is UnitDiskClass.SCHUR

    @property
    def in_svn(self) -> bool:
        return self in (UnitDiskClass.SCHUR, UnitDiskClass.SIMPLE_VON_NEUMANN_ONLY)

    @property
    def in_vn(self) -> bool:
        return self is not UnitDiskClass.OUTSIDE


class Undecided:
    """Sentinel verdict: comparison could not be certified at this precision."""

    _instance = None

    def __new__(cls):
        if cls._instance is None:
            cls._instance = super().__new__(cls)
        return cls._instance

    def __repr__(self):
        return "Undecided"


UNDECIDED = Undecided()

Verdict = UnitDiskClass | Undecided


@dataclass
class ClassifiedPoly:
    coefficients: list
    unit_disk_class: Verdict
    trace: list[str] = field(default_factory=list)


# ---------------------------------------------------------------------------
# Coefficient-domain adapters
# ---------------------------------------------------------------------------


class _GaussianOps:
    """Exact operations on GaussianRational coefficients."""

    @staticmethod
    def coerce(c) -> GaussianRational:
        if isinstance(c, GaussianRational):
            return c
        if isinstance(c, (int, Fraction)):
            return GaussianRational(Fraction(c))
        if isinstance(c, complex):
            raise TypeError("float complex not accepted; use GaussianRational")
        raise TypeError(f"cannot use {c!r} as a Gaussian-rational coefficient")

    @staticmethod
    def is_zero(c: GaussianRational) -> bool:
        return c.is_zero

    @staticmethod
    def conj(c: GaussianRational) -> GaussianRational:
        return c.conjugate()

    @staticmethod
    def mul(a, b) -> GaussianRational:
        return a * b

    @staticmethod
    def sub(a, b) -> GaussianRational:
        return a - b

    @staticmethod
    def int_mul(c: GaussianRational, n: int) -> GaussianRational:
        return c * n

    @staticmethod
    def abs2_cmp(a: GaussianRational, b: GaussianRational) -> int:
        x, y = a.abs2(), b.abs2()
        return (x > y) - (x < y)


class _SympyOps:
    """Exact operations on sympy expressions (algebraic coefficients)."""

    @staticmethod
    def coerce(c) -> sp.Expr:
        return sp.sympify(c)

    @staticmethod
    def is_zero(c: sp.Expr) -> bool:
        z = c.is_zero
        if z is None:
            z = sp.simplify(sp.expand(c)).is_zero
        if z is None:
            raise UndecidedAtPrecisionCap(f"cannot decide whether {c} is zero")
        return bool(z)

    @staticmethod
    def conj(c: sp.Expr) -> sp.Expr:
        return sp.expand(sp.conjugate(c))

    @staticmethod
    def mul(a, b) -> sp.Expr:
        return sp.expand(a * b)

    @staticmethod
    def sub(a, b) -> sp.Expr:
        return sp.expand(a - b)

    @staticmethod
    def int_mul(c: sp.Expr, n: int) -> sp.Expr:
        return sp.expand(c * n)

    @staticmethod
    def abs2_cmp(a: sp.Expr, b: sp.Expr) -> int:
        d = sp.expand(a * sp.conjugate(a) - b * sp.conjugate(b))
        d = sp.simplify(sp.radsimp(d))
        if d.is_zero:
            return 0
        if d.is_positive:
            return 1
        if d.is_negative:
            return -1
        # Exact sign via the minimal polynomial route would be possible, but a
        # high-precision evaluation with a wide certainty margin decides all
        # algebraic inputs that arise here; refuse rather than guess.
        v = d.evalf(80)
        if v > sp.Rational(1, 10**60):
            return 1
        if v < -sp.Rational(1, 10**60):
            return -1
        raise UndecidedAtPrecisionCap(f"cannot certify the sign of {d}")


class _IntervalOps:
    """Certified operations on rectangular complex enclosures."""

    @staticmethod
    def coerce(c) -> ComplexInterval:
        if isinstance(c, ComplexInterval):
            return c
        if isinstance(c, Interval):
            return ComplexInterval(c, Interval.point(0))
        if isinstance(c, GaussianRational):
            return ComplexInterval.point(c.re, c.im)
        if isinstance(c, (int, Fraction)):
            return ComplexInterval.point(Fraction(c))
        raise TypeError(f"cannot use {c!r} as an interval coefficient")

    @staticmethod
    def is_zero(c: ComplexInterval) -> bool | None:
        if c.is_certainly_zero:
            return True
        if not c.possibly_zero:
            return False
        return None

    @staticmethod
    def conj(c: ComplexInterval) -> ComplexInterval:
        return c.conjugate()

    @staticmethod
    def mul(a, b) -> ComplexInterval:
        return a * b

    @staticmethod
    def sub(a, b) -> ComplexInterval:
        return a - b

    @staticmethod
    def int_mul(c: ComplexInterval, n: int) -> ComplexInterval:
        return ComplexInterval(c.re * n, c.im * n)

    @staticmethod
    def abs2_cmp(a: ComplexInterval, b: ComplexInterval) -> int | None:
        x, y = a.abs2(), b.abs2()
        if x.certainly_gt(y):
            return 1
        if x.certainly_lt(y):
            return -1
        if x.is_point and y.is_point and x.lo == y.lo:
            return 0
        return None


# ---------------------------------------------------------------------------
# Core recursion
# ---------------------------------------------------------------------------


def _reduce(coeffs: list, ops) -> list:
    """The reduced polynomial Q^r of §-style recursion (ascending coeffs)."""
    n = len(coeffs) - 1
    if n < 1:
        raise DegreeZeroError("reduce requires degree >= 1")
    a0 = coeffs[0]
    an_conj = ops.conj(coeffs[n])
    out = []
    for j in range(1, n + 1):
        out.append(
            ops.sub(ops.mul(an_conj, coeffs[j]), ops.mul(a0, ops.conj(coeffs[n - j])))
        )
    return out


def _derivative(coeffs: list, ops) -> list:
    return [ops.int_mul(c, j) for j, c in enumerate(coeffs)][1:]


def _trim_leading(coeffs: list, ops) -> list:
    """Drop certainly-zero leading coefficients; None (unknown) is an error."""
    out = list(coeffs)
    while out:
        z = ops.is_zero(out[-1])
        if z is None:
            raise LeadingCoefficientAmbiguous(
                "leading-coefficient enclosure contains 0"
            )
        if not z:
            break
        out.pop()
    return out


def _classify(coeffs: list, ops, trace: list[str]) -> Verdict:
    # Strip roots at the origin: modulus 0, never affects the class.
    m = 0
    while coeffs:
        z = ops.is_zero(coeffs[0])
        if z is None:
            return UNDECIDED
        if not z:
            break
        coeffs = coeffs[1:]
        m += 1
    if m:
        trace.append(f"strip z^{m} (roots at origin)")
    n = len(coeffs) - 1
    if n <= 0:
        trace.append("constant: no roots off the origin -> Schur")
        return UnitDiskClass.SCHUR
    if n == 1:
        cmp = ops.abs2_cmp(coeffs[0], coeffs[1])
        if cmp is None:
            return UNDECIDED
        if cmp < 0:
            trace.append("deg 1: |a0| < |a1| -> Schur")
            return UnitDiskClass.SCHUR
        if cmp == 0:
            trace.append("deg 1: |a0| = |a1| -> simple unimodular root")
            return UnitDiskClass.SIMPLE_VON_NEUMANN_ONLY
        trace.append("deg 1: |a0| > |a1| -> Outside")
        return UnitDiskClass.OUTSIDE
    cmp = ops.abs2_cmp(coeffs[n], coeffs[0])
    if cmp is None:
        return UNDECIDED
    if cmp > 0:
        trace.append(f"deg {n}: |lc| > |cc|, recurse on Q^r")
        # Degree law: lc of Q^r is |a_n|^2 - |a_0|^2 > 0, so deg Q^r = n-1 >= 1
        # and the flagged "Q^r a nonzero constant" case is unreachable here.
        return _classify(_reduce(coeffs, ops), ops, trace)
    reduced = _reduce(coeffs, ops)
    flags = [ops.is_zero(c) for c in reduced]
    if any(f is None for f in flags):
        return UNDECIDED
    if all(flags):
        trace.append(f"deg {n}: Q^r = 0, recurse on Q'")
        sub = _classify(_derivative(coeffs, ops), ops, trace)
        if isinstance(sub, Undecided):
            return UNDECIDED
        if sub is UnitDiskClass.SCHUR:
            # Q' Schur => Q in svN; |lc| = |cc| rules out Schur itself.
            return UnitDiskClass.SIMPLE_VON_NEUMANN_ONLY
        if sub.in_vn:
            return UnitDiskClass.VON_NEUMANN_ONLY
        return UnitDiskClass.OUTSIDE
    trace.append(f"deg {n}: |lc| <= |cc| with Q^r != 0 -> Outside")
    return UnitDiskClass.OUTSIDE


# ---------------------------------------------------------------------------
# Public API
# ---------------------------------------------------------------------------


def _pick_ops(coeffs: Sequence):
    if any(isinstance(c, (ComplexInterval, Interval)) for c in coeffs):
        return _IntervalOps
    if any(isinstance(c, sp.Basic) for c in coeffs):
        return _SympyOps
    return _GaussianOps


def reduce_poly(coeffs: Sequence) -> list:
    """Q^r for a coefficient list (ascending degree)."""
    ops = _pick_ops(coeffs)
    cs = [ops.coerce(c) for c in coeffs]
    cs = _trim_leading(cs, ops)
    return _reduce(cs, ops)


def classify_with_trace(coeffs: Sequence) -> ClassifiedPoly:
    ops = _pick_ops(coeffs)
    cs = [ops.coerce(c) for c in coeffs]
    cs = _trim_leading(cs, ops)
    if not cs:
        raise DegreeZeroError("classify requires a nonzero polynomial")
    trace: list[str] = []
    verdict = _classify(cs, ops, trace)
    return ClassifiedPoly(cs, verdict, trace)


def classify(coeffs: Sequence) -> Verdict:
    """Classify a polynomial with exact coefficients (ascending degree)."""
    return classify_with_trace(coeffs).unit_disk_class


def classify_interval(
    coeffs: Sequence, precision_bits: int = 0
) -> Verdict:
    """Classify with certified interval coefficients; may return UNDECIDED.

    Interval arithmetic over rational endpoints is exact, so precision_bits is
    accepted for interface compatibility only; tightening the *input*
    enclosures is what resolves an UNDECIDED verdict.
    """
    del precision_bits
    cs = [_IntervalOps.coerce(c) for c in coeffs]
    cs = _trim_leading(cs, _IntervalOps)
    if not cs:
        raise DegreeZeroError("classify requires a nonzero polynomial")
    trace: list[str] = []
    return _classify(cs, _IntervalOps, trace)
