"""Real algebraic numbers: isolation, refinement, certified decimals.

An AlgebraicNumber is an integer-coefficient defining polynomial (square-free
and primitive, but not necessarily minimal) together with an isolating
rational interval.  Rational roots are stored as exact point intervals; all
other roots carry a strict sign change of the defining polynomial across the
interval, so bisection refinement is certified.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Iterable, Sequence

import sympy as sp

from ..errors import UndecidedAtPrecisionCap, ZeroPolynomialError
from .gaussian import RationalLike, as_rational
from .interval import Interval
from .multipoly import MultiPoly

_X = sp.Symbol("x")


def _eval_int_poly(coeffs_desc: Sequence[int], x: Fraction) -> Fraction:
    acc = Fraction(0)
    for c in coeffs_desc:
        acc = acc * x + c
    return acc


class AlgebraicNumber:
    """A real root of an integer polynomial, pinned by an isolating interval."""

    __slots__ = ("defining_poly", "_interval")

    def __init__(self, defining_poly: Sequence[int], interval: Interval):
        coeffs = tuple(int(c) for c in defining_poly)
        while coeffs and coeffs[0] == 0:
            coeffs = coeffs[1:]
        if not coeffs:
            raise ZeroPolynomialError("defining polynomial must be nonzero")
        self.defining_poly = coeffs
        if len(coeffs) == 2 and not interval.is_point:
            root = Fraction(-coeffs[1], coeffs[0])
            if interval.contains(root):
                interval = Interval.point(root)
        if interval.is_point:
            if _eval_int_poly(coeffs, interval.lo):
                raise ValueError("point interval must be an exact rational root")
        else:
            slo = _eval_int_poly(coeffs, interval.lo)
            shi = _eval_int_poly(coeffs, interval.hi)
            if slo == 0 or shi == 0 or (slo > 0) == (shi > 0):
                raise ValueError("interval must exhibit a strict sign change")
        self._interval = interval

    # -- basic views ------------------------------------------------------
    @property
    def interval(self) -> Interval:
        return self._interval

    @property
    def is_rational(self) -> bool:
        return self._interval.is_point

    def as_rational(self) -> Fraction:
        if not self.is_rational:
            raise ValueError("not certified rational")
        return self._interval.lo

    @staticmethod
    def from_rational(x: RationalLike) -> "AlgebraicNumber":
        v = as_rational(x)
        return AlgebraicNumber((v.denominator, -v.numerator), Interval.point(v))

    def equals_rational(self, x: RationalLike) -> bool:
        """Exact test: is this number the rational x?

        True iff x is a root of the defining polynomial lying inside the
        isolating interval (which isolates exactly one root).
        """
        v = as_rational(x)
        if not self._interval.contains(v):
            return False
        if _eval_int_poly(self.defining_poly, v):
            return False
        if not self._interval.is_point:
            self._interval = Interval.point(v)
        return True

    # -- refinement -------------------------------------------------------
    def refine(self, width: Fraction | RationalLike) -> Interval:
        """Bisect until the isolating interval is narrower than width."""
        target = as_rational(width)
        iv = self._interval
        if iv.is_point:
            return iv
        lo, hi = iv.lo, iv.hi
        slo = _eval_int_poly(self.defining_poly, lo)
        while hi - lo >= target:
            mid = (lo + hi) / 2
            smid = _eval_int_poly(self.defining_poly, mid)
            if smid == 0:
                lo = hi = mid
                break
            if (smid > 0) == (slo > 0):
                lo, slo = mid, smid
            else:
                hi = mid
        self._interval = Interval(lo, hi)
        return self._interval

    def refine_steps(self, n: int) -> Interval:
        iv = self._interval
        if not iv.is_point:
            self.refine(iv.width / 2**n)
        return self._interval

    # -- decimal rendering -------------------------------------------------
    def approx(self, digits: int = 20) -> str:
        """Decimal string whose first `digits` significant digits are certified."""
        if digits < 1:
            raise ValueError("digits must be positive")
        # Separate from zero first (unless the number is exactly zero).
        iv = self._interval
        guard = 0
        while iv.contains_zero and not iv.is_point:
            iv = self.refine(iv.width / 2**8)
            guard += 1
            if guard > 400:
                raise UndecidedAtPrecisionCap("cannot separate root from zero")
        if iv.is_point and iv.lo == 0:
            return "0." + "0" * (digits - 1)
        for _ in range(digits * 4 + 200):
            lo_s = _sig_repr(self._interval.lo, digits)
            hi_s = _sig_repr(self._interval.hi, digits)
            if lo_s == hi_s:
                return lo_s
            self.refine(self._interval.width / 2**8)
        raise UndecidedAtPrecisionCap(
            f"decimal approximation not certified at {digits} digits"
        )

    def __float__(self) -> float:
        self.refine(Fraction(1, 10**20))
        return float(self._interval.mid)

    # -- comparisons -------------------------------------------------------
    def _cmp(self, other) -> int:
        if isinstance(other, (int, Fraction)):
            other = AlgebraicNumber.from_rational(other)
        if not isinstance(other, AlgebraicNumber):
            raise TypeError(f"cannot compare with {other!r}")
        for _ in range(4096):
            a, b = self._interval, other._interval
            if a.certainly_lt(b):
                return -1
            if a.certainly_gt(b):
                return 1
            if a.is_point and b.is_point:
                return (a.lo > b.lo) - (a.lo < b.lo)
            if self.defining_poly == other.defining_poly and a == b:
                return 0
            self.refine(a.width / 4 if not a.is_point else Fraction(1))
            other.refine(b.width / 4 if not b.is_point else Fraction(1))
        raise UndecidedAtPrecisionCap("comparison not separated; values may be equal")

    def __lt__(self, other):
        return self._cmp(other) < 0

    def __le__(self, other):
        return self._cmp(other) <= 0

    def __gt__(self, other):
        return self._cmp(other) > 0

    def __ge__(self, other):
        return self._cmp(other) >= 0

    def sign(self) -> int:
        iv = self._interval
        if iv.is_point:
            v = iv.lo
            return (v > 0) - (v < 0)
        while iv.contains_zero:
            iv = self.refine(iv.width / 4)
            if iv.is_point:
                break
        s = iv.sign()
        assert s is not None
        return s

    def to_sympy(self) -> sp.Expr:
        """The root as an exact sympy object (CRootOf or Rational)."""
        if self.is_rational:
            v = self.as_rational()
            return sp.Rational(v.numerator, v.denominator)
        poly = sp.Poly(list(self.defining_poly), _X)
        self.refine(Fraction(1, 10**30))
        target = self._interval.mid
        roots = poly.real_roots()
        best = min(roots, key=lambda r: abs(sp.Float(r.evalf(40)) - sp.Rational(target)))
        return best

    def __repr__(self):
        try:
            a = self.approx(12)
        except UndecidedAtPrecisionCap:
            a = "?"
        return f"AlgebraicNumber(~{a}, deg {len(self.defining_poly) - 1})"


def _sig_repr(x: Fraction, digits: int) -> str:
    """Round x to `digits` significant digits; plain decimal string."""
    if x == 0:
        return "0." + "0" * (digits - 1)
    sign = "-" if x < 0 else ""
    x = abs(x)
    # exponent e with 10^e <= x < 10^(e+1)
    e = len(str(x.numerator)) - len(str(x.denominator))
    while 10**e > x:
        e -= 1
    while 10 ** (e + 1) <= x:
        e += 1
    scaled = x * Fraction(10) ** (digits - 1 - e)
    n = int(scaled)
    if scaled - n >= Fraction(1, 2):
        n += 1
    digits_str = str(n)
    if len(digits_str) > digits:  # rounding carried over, e.g. 999 -> 1000
        e += 1
        digits_str = digits_str[:-1]
    if 0 <= e < digits:
        int_part = digits_str[: e + 1]
        frac_part = digits_str[e + 1 :]
        return f"{sign}{int_part}.{frac_part}" if frac_part else f"{sign}{int_part}"
    if -5 <= e < 0:
        return f"{sign}0.{'0' * (-e - 1)}{digits_str}"
    return f"{sign}{digits_str[0]}.{digits_str[1:]}e{e}"


def isolate_real_roots(
    p: MultiPoly | Sequence[RationalLike], var: str | None = None
) -> list[AlgebraicNumber]:
    """Isolate all distinct real roots of a univariate rational polynomial.

    Accepts a univariate MultiPoly or a descending rational coefficient list.
    The square-free part is taken first (exact gcd); results are sorted
    ascending with pairwise-disjoint isolating intervals.
    """
    if isinstance(p, MultiPoly):
        if not p.is_real():
            raise ValueError("real coefficients required")
        live = [v for v in p.variables if p.degree(v) > 0]
        if len(live) > 1:
            raise ValueError("polynomial must be univariate")
        if p.is_zero:
            raise ZeroPolynomialError("cannot isolate roots of the zero polynomial")
        if not live:
            return []
        coeffs = [c.lex_leading_coeff().re for c in p.coeffs_in(live[0])][::-1]
    else:
        coeffs = [as_rational(c) for c in p]
    while coeffs and coeffs[0] == 0:
        coeffs = coeffs[1:]
    if not coeffs:
        raise ZeroPolynomialError("cannot isolate roots of the zero polynomial")
    if len(coeffs) == 1:
        return []
    poly = sp.Poly([sp.Rational(c.numerator, c.denominator) for c in coeffs], _X)
    sqf = poly.div(poly.gcd(poly.diff(_X)))[0]
    _, zpoly = sp.Poly(sqf, _X, domain="QQ").clear_denoms(convert=True)
    _, zpoly = zpoly.primitive()
    if zpoly.all_coeffs()[0] < 0:
        zpoly = -zpoly
    ints = [int(c) for c in zpoly.all_coeffs()]
    out: list[AlgebraicNumber] = []
    for a, b in zpoly.intervals(sqf=True):
        lo = Fraction(sp.Rational(a).p, sp.Rational(a).q)
        hi = Fraction(sp.Rational(b).p, sp.Rational(b).q)
        if lo == hi:
            out.append(AlgebraicNumber(ints, Interval.point(lo)))
            continue
        # An endpoint may coincide with a neighboring rational root; refine
        # until both endpoints have nonzero values of opposite sign.
        while True:
            slo = _eval_int_poly(ints, lo)
            shi = _eval_int_poly(ints, hi)
            if slo and shi and (slo > 0) != (shi > 0):
                break
            a2, b2 = zpoly.refine_root(
                sp.Rational(lo.numerator, lo.denominator),
                sp.Rational(hi.numerator, hi.denominator),
                steps=4,
            )
            lo = Fraction(sp.Rational(a2).p, sp.Rational(a2).q)
            hi = Fraction(sp.Rational(b2).p, sp.Rational(b2).q)
            if lo == hi:
                break
        if lo == hi:
            out.append(AlgebraicNumber(ints, Interval.point(lo)))
        else:
            out.append(AlgebraicNumber(ints, Interval(lo, hi)))
    out.sort(key=lambda r: (r.interval.lo, r.interval.hi))
    return out


def verify_algebraic_identity(candidate: AlgebraicNumber, closed_form) -> bool:
    """Decide exactly whether closed_form equals the candidate root.

    closed_form may be a rational or a sympy expression built from rationals
    and nested square roots.  The check is exact: the closed form's defining
    polynomial (computed by resultant elimination of the radicals) must divide
    the candidate's defining polynomial, and the closed form's value must lie
    in the candidate's isolating interval.
    """
    expr = sp.nsimplify(sp.sympify(closed_form), rational=False)
    if expr.free_symbols:
        raise ValueError("closed form must be a constant expression")
    if not expr.is_real:
        return False
    # Fast numeric filter with certified slack.
    candidate.refine(Fraction(1, 10**45))
    iv = candidate.interval
    val = expr.evalf(60)
    lo = sp.Rational(iv.lo.numerator, iv.lo.denominator)
    hi = sp.Rational(iv.hi.numerator, iv.hi.denominator)
    slack = sp.Rational(1, 10**40)
    if val < lo - slack or val > hi + slack:
        return False
    if expr.is_Rational:
        root = Fraction(expr.p, expr.q)
        return _eval_int_poly(candidate.defining_poly, root) == 0 and iv.contains(root)
    mp = sp.minimal_polynomial(expr, _X, polys=True)
    cand = sp.Poly(list(candidate.defining_poly), _X)
    _, rem = cand.div(mp)
    if not rem.is_zero:
        return False
    # mp divides the defining polynomial, and the candidate interval isolates
    # a single root of it; equality holds iff mp has a root in the interval.
    return bool(mp.count_roots(lo, hi) >= 1)
