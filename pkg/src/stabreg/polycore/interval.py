"""Certified interval arithmetic over exact rational endpoints.

Endpoints are Fractions, so interval evaluation of a polynomial at rational
input intervals is itself exact: the returned interval always encloses the
true range of values, and degenerate (width-0) inputs give the exact value.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Mapping

from .gaussian import RationalLike, as_rational
from .multipoly import MultiPoly


@dataclass(frozen=True)
class Interval:
    lo: Fraction
    hi: Fraction

    def __post_init__(self):
        if self.lo > self.hi:
            raise ValueError("interval requires lo <= hi")

    @staticmethod
    def point(x: RationalLike) -> "Interval":
        v = as_rational(x)
        return Interval(v, v)

    @staticmethod
    def of(lo: RationalLike, hi: RationalLike) -> "Interval":
        return Interval(as_rational(lo), as_rational(hi))

    # -- structure --------------------------------------------------------
    @property
    def width(self) -> Fraction:
        return self.hi - self.lo

    @property
    def mid(self) -> Fraction:
        return (self.lo + self.hi) / 2

    def contains(self, x: RationalLike) -> bool:
        v = as_rational(x)
        return self.lo <= v <= self.hi

    def contains_interval(self, other: "Interval") -> bool:
        return self.lo <= other.lo and other.hi <= self.hi

    @property
    def contains_zero(self) -> bool:
        return self.lo <= 0 <= self.hi

    @property
    def is_point(self) -> bool:
        return self.lo == self.hi

    def sign(self) -> int | None:
        """Certified sign: +1, -1, 0 (exact point at zero), or None if unknown."""
        if self.lo > 0:
            return 1
        if self.hi < 0:
            return -1
        if self.lo == 0 == self.hi:
            return 0
        return None

    # -- arithmetic -------------------------------------------------------
    def _coerce(self, other) -> "Interval":
        if isinstance(other, Interval):
            return other
        if isinstance(other, (int, Fraction)):
            return Interval.point(other)
        return NotImplemented

    def __add__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return NotImplemented
        return Interval(self.lo + o.lo, self.hi + o.hi)

    __radd__ = __add__

    def __neg__(self):
        return Interval(-self.hi, -self.lo)

    def __sub__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return NotImplemented
        return self + (-o)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return NotImplemented
        products = (
            self.lo * o.lo,
            self.lo * o.hi,
            self.hi * o.lo,
            self.hi * o.hi,
        )
        return Interval(min(products), max(products))

    __rmul__ = __mul__

    def __pow__(self, n: int):
        if n < 0:
            raise ValueError("negative interval power")
        if n == 0:
            return Interval.point(1)
        if n % 2 == 1 or self.lo >= 0:
            return Interval(self.lo**n, self.hi**n)
        if self.hi <= 0:
            return Interval(self.hi**n, self.lo**n)
        return Interval(Fraction(0), max(self.lo**n, self.hi**n))

    # -- certified comparisons --------------------------------------------
    def certainly_lt(self, other: "Interval") -> bool:
        return self.hi < other.lo

    def certainly_gt(self, other: "Interval") -> bool:
        return self.lo > other.hi

    def __repr__(self):
        return f"Interval({self.lo}, {self.hi})"


@dataclass(frozen=True)
class ComplexInterval:
    """A rectangular complex enclosure: re + im*i with interval parts."""

    re: Interval
    im: Interval

    @staticmethod
    def point(re: RationalLike, im: RationalLike = 0) -> "ComplexInterval":
        return ComplexInterval(Interval.point(re), Interval.point(im))

    @property
    def is_exact(self) -> bool:
        return self.re.is_point and self.im.is_point

    @property
    def is_certainly_zero(self) -> bool:
        return (
            self.re.lo == 0 == self.re.hi and self.im.lo == 0 == self.im.hi
        )

    @property
    def possibly_zero(self) -> bool:
        return self.re.contains_zero and self.im.contains_zero

    def conjugate(self) -> "ComplexInterval":
        return ComplexInterval(self.re, -self.im)

    def abs2(self) -> Interval:
        return self.re**2 + self.im**2

    def __add__(self, other: "ComplexInterval"):
        return ComplexInterval(self.re + other.re, self.im + other.im)

    def __sub__(self, other: "ComplexInterval"):
        return ComplexInterval(self.re - other.re, self.im - other.im)

    def __mul__(self, other: "ComplexInterval"):
        return ComplexInterval(
            self.re * other.re - self.im * other.im,
            self.re * other.im + self.im * other.re,
        )


def eval_interval(
    p: MultiPoly, point: Mapping[str, Interval], precision_bits: int = 0
) -> Interval:
    """Enclose p over a box of rational intervals.

    The computation is exact over the rationals, so the enclosure is valid for
    any precision; precision_bits is accepted for interface compatibility and
    ignored (there is no rounding to control).
    """
    del precision_bits
    for v in p.variables:
        if v not in point:
            raise ValueError(f"unbound variable {v!r}")
    acc = Interval.point(0)
    for exps, c in p.terms.items():
        if not c.is_real:
            raise ValueError("eval_interval requires a real polynomial")
        term = Interval.point(c.re)
        for v, e in zip(p.variables, exps):
            if e:
                term = term * (point[v] ** e)
        acc = acc + term
    return acc
