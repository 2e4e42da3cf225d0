"""Exact multivariate polynomials over GaussianRational.

``MultiPoly`` stores a sorted variable tuple and a sparse map from exponent
vectors to nonzero GaussianRational coefficients.  Ring arithmetic,
differentiation, substitution, and exact evaluation are implemented directly
on the sparse representation; heavy elimination work (resultants,
discriminants, factorization) is delegated to sympy through an exact
round-trip bridge over QQ / QQ(i).
"""

from __future__ import annotations

from fractions import Fraction
from functools import lru_cache
from typing import Iterable, Mapping

import sympy as sp

from ..errors import DegreeTooLowError, DegreeZeroError
from .gaussian import GR_ONE, GR_ZERO, GaussianRational, RationalLike, as_rational

ScalarLike = GaussianRational | Fraction | int


def _as_scalar(c: ScalarLike) -> GaussianRational:
    if isinstance(c, GaussianRational):
        return c
    if isinstance(c, (int, Fraction)):
        return GaussianRational(Fraction(c))
    raise TypeError(f"cannot coerce {c!r} to a polynomial coefficient")


@lru_cache(maxsize=None)
def _symbol(name: str) -> sp.Symbol:
    return sp.Symbol(name, real=True)


class MultiPoly:
    """Immutable sparse multivariate polynomial over GaussianRational."""

    __slots__ = ("variables", "terms")

    def __init__(
        self,
        variables: Iterable[str],
        terms: Mapping[tuple[int, ...], ScalarLike],
    ):
        vs = tuple(variables)
        if list(vs) != sorted(vs):
            order = sorted(range(len(vs)), key=lambda i: vs[i])
            remap = {old: new for new, old in enumerate(order)}
            new_terms: dict[tuple[int, ...], GaussianRational] = {}
            for exps, c in terms.items():
                new_exps = tuple(exps[order[i]] for i in range(len(vs)))
                new_terms[new_exps] = _as_scalar(c)
            vs = tuple(sorted(vs))
            terms = new_terms
        clean = {
            tuple(e): _as_scalar(c)
            for e, c in terms.items()
            if not _as_scalar(c).is_zero
        }
        for e in clean:
            if len(e) != len(vs):
                raise ValueError("exponent vector length must equal variable count")
        object.__setattr__(self, "variables", vs)
        object.__setattr__(self, "terms", clean)

    def __setattr__(self, *_):
        raise AttributeError("MultiPoly is immutable")

    # -- constructors -----------------------------------------------------
    @staticmethod
    def zero(variables: Iterable[str] = ()) -> "MultiPoly":
        return MultiPoly(variables, {})

    @staticmethod
    def const(c: ScalarLike, variables: Iterable[str] = ()) -> "MultiPoly":
        vs = tuple(variables)
        return MultiPoly(vs, {(0,) * len(vs): _as_scalar(c)})

    @staticmethod
    def var(name: str) -> "MultiPoly":
        return MultiPoly((name,), {(1,): GR_ONE})

    @staticmethod
    def univariate(name: str, coeffs_ascending: Iterable[ScalarLike]) -> "MultiPoly":
        return MultiPoly(
            (name,), {(j,): _as_scalar(c) for j, c in enumerate(coeffs_ascending)}
        )

    # -- structure --------------------------------------------------------
    @property
    def is_zero(self) -> bool:
        return not self.terms

    def degree(self, var: str) -> int:
        """Degree in var; -1 for the zero polynomial, 0 if var absent."""
        if self.is_zero:
            return -1
        if var not in self.variables:
            return 0
        i = self.variables.index(var)
        return max(e[i] for e in self.terms)

    def total_degree(self) -> int:
        if self.is_zero:
            return -1
        return max(sum(e) for e in self.terms)

    def coeffs_in(self, var: str) -> list["MultiPoly"]:
        """Coefficients of powers of var, ascending, as MultiPoly values."""
        i = self.variables.index(var)
        rest = tuple(v for v in self.variables if v != var)
        d = self.degree(var)
        buckets: list[dict[tuple[int, ...], GaussianRational]] = [
            {} for _ in range(d + 1)
        ]
        for exps, c in self.terms.items():
            rest_exps = tuple(e for j, e in enumerate(exps) if j != i)
            buckets[exps[i]][rest_exps] = c
        return [MultiPoly(rest, bucket) for bucket in buckets]

    def is_real(self) -> bool:
        return all(c.is_real for c in self.terms.values())

    # -- variable unification ----------------------------------------------
    def _unify(self, other: "MultiPoly") -> tuple["MultiPoly", "MultiPoly"]:
        if self.variables == other.variables:
            return self, other
        union = tuple(sorted(set(self.variables) | set(other.variables)))
        return self._embed(union), other._embed(union)

    def _embed(self, union: tuple[str, ...]) -> "MultiPoly":
        if union == self.variables:
            return self
        pos = [union.index(v) for v in self.variables]
        new_terms: dict[tuple[int, ...], GaussianRational] = {}
        for exps, c in self.terms.items():
            new_e = [0] * len(union)
            for p, e in zip(pos, exps):
                new_e[p] = e
            new_terms[tuple(new_e)] = c
        return MultiPoly(union, new_terms)

    # -- ring arithmetic ----------------------------------------------------
    def _coerce(self, other) -> "MultiPoly":
        if isinstance(other, MultiPoly):
            return other
        if isinstance(other, (int, Fraction, GaussianRational)):
            return MultiPoly.const(other, self.variables)
        return NotImplemented

    def __add__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return NotImplemented
        p, q = self._unify(o)
        terms = dict(p.terms)
        for e, c in q.terms.items():
            terms[e] = terms.get(e, GR_ZERO) + c
        return MultiPoly(p.variables, terms)

    __radd__ = __add__

    def __neg__(self):
        return MultiPoly(self.variables, {e: -c for e, c in self.terms.items()})

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
        p, q = self._unify(o)
        terms: dict[tuple[int, ...], GaussianRational] = {}
        for e1, c1 in p.terms.items():
            for e2, c2 in q.terms.items():
                e = tuple(x + y for x, y in zip(e1, e2))
                terms[e] = terms.get(e, GR_ZERO) + c1 * c2
        return MultiPoly(p.variables, terms)

    __rmul__ = __mul__

    def __pow__(self, n: int):
        if n < 0:
            raise ValueError("negative polynomial power")
        result = MultiPoly.const(GR_ONE, self.variables)
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base if n > 1 else base
            n >>= 1
        return result

    def __eq__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return NotImplemented
        p, q = self._unify(o)
        return p.terms == q.terms

    def __hash__(self):
        return hash((self.variables, frozenset(self.terms.items())))

    # -- calculus / evaluation ----------------------------------------------
    def diff(self, var: str) -> "MultiPoly":
        if var not in self.variables:
            return MultiPoly.zero(self.variables)
        i = self.variables.index(var)
        terms: dict[tuple[int, ...], GaussianRational] = {}
        for exps, c in self.terms.items():
            if exps[i] == 0:
                continue
            new_e = exps[:i] + (exps[i] - 1,) + exps[i + 1 :]
            terms[new_e] = terms.get(new_e, GR_ZERO) + c * exps[i]
        return MultiPoly(self.variables, terms)

    def subs(self, mapping: Mapping[str, "MultiPoly | ScalarLike"]) -> "MultiPoly":
        """Substitute polynomials (or scalars) for variables, exactly."""
        repl: dict[str, MultiPoly] = {}
        for name, val in mapping.items():
            repl[name] = val if isinstance(val, MultiPoly) else MultiPoly.const(val)
        keep = tuple(v for v in self.variables if v not in repl)
        acc = MultiPoly.zero(keep)
        for exps, c in self.terms.items():
            term = MultiPoly.const(c, keep)
            for v, e in zip(self.variables, exps):
                if e == 0:
                    continue
                factor = repl.get(v, MultiPoly.var(v))
                term = term * factor**e
            acc = acc + term
        return acc

    def eval(self, point: Mapping[str, ScalarLike]) -> GaussianRational:
        """Exact evaluation with every variable bound."""
        vals = []
        for v in self.variables:
            if v not in point:
                raise ValueError(f"unbound variable {v!r}")
            vals.append(_as_scalar(point[v]))
        acc = GR_ZERO
        for exps, c in self.terms.items():
            term = c
            for val, e in zip(vals, exps):
                for _ in range(e):
                    term = term * val
            acc = acc + term
        return acc

    # -- normalization -------------------------------------------------------
    def content(self) -> Fraction:
        """Positive rational content (gcd of |coefficients|); 0 for 0."""
        nums: list[int] = []
        dens: list[int] = []
        for c in self.terms.values():
            for part in (c.re, c.im):
                if part:
                    nums.append(abs(part.numerator))
                    dens.append(part.denominator)
        if not nums:
            return Fraction(0)
        from math import gcd, lcm

        g = 0
        for n in nums:
            g = gcd(g, n)
        l = 1
        for d in dens:
            l = lcm(l, d)
        return Fraction(g, l)

    def primitive(self) -> "MultiPoly":
        """Divide out the content (result has integer coefficients, content 1)."""
        c = self.content()
        if not c:
            return self
        inv = GaussianRational(1 / c)
        return MultiPoly(self.variables, {e: v * inv for e, v in self.terms.items()})

    def scale(self, c: ScalarLike) -> "MultiPoly":
        s = _as_scalar(c)
        return MultiPoly(self.variables, {e: v * s for e, v in self.terms.items()})

    def lex_leading_coeff(self) -> GaussianRational:
        if self.is_zero:
            return GR_ZERO
        return self.terms[max(self.terms)]

    # -- sympy bridge ----------------------------------------------------------
    def to_sympy(self) -> sp.Expr:
        syms = [_symbol(v) for v in self.variables]
        acc = sp.Integer(0)
        for exps, c in self.terms.items():
            coeff = sp.Rational(c.re.numerator, c.re.denominator)
            if c.im:
                coeff += sp.I * sp.Rational(c.im.numerator, c.im.denominator)
            mono = sp.Integer(1)
            for s, e in zip(syms, exps):
                if e:
                    mono *= s**e
            acc += coeff * mono
        return acc

    @staticmethod
    def from_sympy(expr: sp.Expr, variables: Iterable[str] | None = None) -> "MultiPoly":
        expr = sp.expand(expr)
        if variables is None:
            variables = sorted(str(s) for s in expr.free_symbols if str(s) != "I")
        vs = tuple(sorted(variables))
        if not vs:
            c = sp.nsimplify(expr, rational=True)
            re, im = c.as_real_imag()
            return MultiPoly.const(
                GaussianRational(
                    Fraction(sp.Rational(re).p, sp.Rational(re).q),
                    Fraction(sp.Rational(im).p, sp.Rational(im).q),
                )
            )
        syms = [_symbol(v) for v in vs]
        poly = sp.Poly(expr, *syms, domain="QQ_I")
        terms: dict[tuple[int, ...], GaussianRational] = {}
        for monom, coeff in poly.terms():
            c = sp.sympify(coeff)
            re, im = c.as_real_imag()
            re, im = sp.Rational(re), sp.Rational(im)
            terms[tuple(monom)] = GaussianRational(
                Fraction(re.p, re.q), Fraction(im.p, im.q)
            )
        return MultiPoly(vs, terms)

    def __repr__(self) -> str:
        return f"MultiPoly({sp.sstr(self.to_sympy())})"


# -- module-level operations ------------------------------------------------


def poly_arith(p: MultiPoly, q: MultiPoly, op: str) -> MultiPoly:
    """Ring arithmetic dispatcher: op in {'add', 'sub', 'mul'}."""
    if op == "add":
        return p + q
    if op == "sub":
        return p - q
    if op == "mul":
        return p * q
    raise ValueError(f"unknown op {op!r}")


def derivative(p: MultiPoly, var: str) -> MultiPoly:
    return p.diff(var)


def resultant(p: MultiPoly, q: MultiPoly, var: str) -> MultiPoly:
    """Resultant with respect to var, exact over the coefficient ring."""
    if p.degree(var) < 1 or q.degree(var) < 1:
        raise DegreeZeroError(f"both inputs must have positive degree in {var!r}")
    rest = sorted((set(p.variables) | set(q.variables)) - {var})
    res = sp.resultant(p.to_sympy(), q.to_sympy(), _symbol(var))
    return MultiPoly.from_sympy(res, rest)


def discriminant(p: MultiPoly, var: str) -> MultiPoly:
    """disc = (-1)^(n(n-1)/2) resultant(p, dp/dvar, var) / lc, exactly divided."""
    if p.degree(var) < 2:
        raise DegreeTooLowError(f"degree in {var!r} must be at least 2")
    rest = sorted(set(p.variables) - {var})
    disc = sp.discriminant(p.to_sympy(), _symbol(var))
    return MultiPoly.from_sympy(disc, rest)


def exact_div(p: MultiPoly, q: MultiPoly) -> MultiPoly | None:
    """Exact polynomial quotient p / q, or None when q does not divide p."""
    union = sorted(set(p.variables) | set(q.variables))
    syms = [_symbol(v) for v in union]
    if not syms:
        if q.is_zero:
            return None
        c = p.lex_leading_coeff() / q.lex_leading_coeff()
        return MultiPoly.const(c)
    pp = sp.Poly(p.to_sympy(), *syms, domain="QQ_I")
    qq = sp.Poly(q.to_sympy(), *syms, domain="QQ_I")
    quo, rem = sp.div(pp, qq)
    if not rem.is_zero:
        return None
    return MultiPoly.from_sympy(quo.as_expr(), union)
