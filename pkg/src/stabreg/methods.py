"""Built-in method families and their characteristic polynomials.

A method is described by a MethodSpec (LMM alpha/beta lists, second-derivative
alpha/beta/gamma lists, or the two-parameter IMEX family) and compiled by
char_poly into a ParamCharPoly: the polynomial

    Phi(zeta, params) = sum_l C_l(params) zeta^l

whose coefficients are exact polynomials in the real parameters.  For LMM and
second-derivative methods the parameter is the complex number mu = a + b*i
(C_l stored as a polynomial in mu); for the IMEX family the parameters are the
real pair (xi, eta).
"""

from __future__ import annotations

import enum
import json
from dataclasses import dataclass, field
from fractions import Fraction
from math import lcm
from typing import Mapping, Sequence

import sympy as sp

from .errors import UnsupportedStepCount
from .polycore.gaussian import GaussianRational, RationalLike, as_rational
from .polycore.interval import ComplexInterval, Interval, eval_interval
from .polycore.multipoly import MultiPoly
from .schur_cohn import UNDECIDED, Undecided, UnitDiskClass, classify, classify_interval

# ---------------------------------------------------------------------------
# Method specifications
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class MethodSpec:
    kind: str  # 'lmm' | 'second_derivative' | 'imex'
    name: str = ""
    alpha: tuple[Fraction, ...] = ()
    beta: tuple[Fraction, ...] = ()
    gamma: tuple[Fraction, ...] = ()
    beta1: Fraction | None = None
    beta0: Fraction | None = None

    def __post_init__(self):
        if self.kind in ("lmm", "second_derivative"):
            if not self.alpha or self.alpha[-1] == 0:
                raise ValueError("alpha_k must be nonzero")
            if len(self.beta) != len(self.alpha):
                raise ValueError("alpha and beta must have equal length")
            if self.kind == "second_derivative" and len(self.gamma) != len(self.alpha):
                raise ValueError("gamma must match alpha length")
        elif self.kind == "imex":
            if self.beta1 is None or self.beta0 is None:
                raise ValueError("imex requires beta1 and beta0")
        else:
            raise ValueError(f"unknown method kind {self.kind!r}")

    @property
    def steps(self) -> int:
        if self.kind == "imex":
            return 3
        return len(self.alpha) - 1


def _fraction_list(values: Sequence[RationalLike]) -> tuple[Fraction, ...]:
    return tuple(as_rational(v) for v in values)


def method_to_json(spec: MethodSpec) -> str:
    def fmt(q: Fraction) -> str:
        return f"{q.numerator}/{q.denominator}" if q.denominator != 1 else str(q.numerator)

    obj: dict = {"kind": spec.kind}
    if spec.name:
        obj["name"] = spec.name
    if spec.kind in ("lmm", "second_derivative"):
        obj["alpha"] = [fmt(q) for q in spec.alpha]
        obj["beta"] = [fmt(q) for q in spec.beta]
        if spec.kind == "second_derivative":
            obj["gamma"] = [fmt(q) for q in spec.gamma]
    else:
        obj["beta1"] = fmt(spec.beta1)
        obj["beta0"] = fmt(spec.beta0)
    return json.dumps(obj, sort_keys=True)


def method_from_json(text: str) -> MethodSpec:
    obj = json.loads(text)
    kind = obj["kind"]
    name = obj.get("name", "")
    if kind == "lmm":
        return MethodSpec(
            kind, name, alpha=_fraction_list(obj["alpha"]),
            beta=_fraction_list(obj["beta"]),
        )
    if kind == "second_derivative":
        return MethodSpec(
            kind, name, alpha=_fraction_list(obj["alpha"]),
            beta=_fraction_list(obj["beta"]), gamma=_fraction_list(obj["gamma"]),
        )
    if kind == "imex":
        return MethodSpec(
            kind, name, beta1=as_rational(obj["beta1"]), beta0=as_rational(obj["beta0"])
        )
    raise ValueError(f"unknown method kind {kind!r}")


# ---------------------------------------------------------------------------
# Built-in families
# ---------------------------------------------------------------------------


def bdf(k: int) -> MethodSpec:
    """k-step backward differentiation formula, 1 <= k <= 7.

    rho(z) = z^k * sum_{j=1..k} (1/j) (1 - 1/z)^j, sigma(z) = z^k, with
    denominators cleared by lcm(1..k) so the stored coefficients are integers.
    """
    if not 1 <= k <= 7:
        raise UnsupportedStepCount("bdf supports 1 <= k <= 7")
    # (1 - 1/z)^j * z^k = z^(k-j) (z-1)^j : accumulate coefficients of z^l
    rho = [Fraction(0)] * (k + 1)
    for j in range(1, k + 1):
        # z^(k-j) (z-1)^j = sum_i binom(j,i) (-1)^(j-i) z^(k-j+i)
        c = Fraction(1, j)
        binom = 1
        for i in range(j + 1):
            if i:
                binom = binom * (j - i + 1) // i
            sign = -1 if (j - i) % 2 else 1
            rho[k - j + i] += c * sign * binom
    scale = lcm(*range(1, k + 1))
    alpha = tuple(q * scale for q in rho)
    beta = tuple(Fraction(0) for _ in range(k)) + (Fraction(scale),)
    return MethodSpec("lmm", f"BDF{k}", alpha=alpha, beta=beta)


def enright_nu(k: int) -> list[Fraction]:
    """nu_l = (-1)^l * integral_0^1 (tau-1) binom(1-tau, l) dtau, exactly."""
    nus = []
    for l in range(k + 1):
        # expand (tau - 1) * prod_{j=0..l-1} (1 - tau - j) / l!
        poly = [Fraction(-1), Fraction(1)]  # tau - 1, ascending in tau
        for j in range(l):
            # multiply by (1 - j) - tau
            c0 = Fraction(1 - j)
            poly = [c0 * poly[0]] + [
                c0 * poly[i] - poly[i - 1] for i in range(1, len(poly))
            ] + [-poly[-1]]
        fact = 1
        for j in range(2, l + 1):
            fact *= j
        integral = sum(c / (i + 1) for i, c in enumerate(poly)) / fact
        nus.append((-1) ** l * integral)
    return nus


def enright(k: int) -> MethodSpec:
    """k-step Enright second-derivative method, 1 <= k <= 8."""
    if not 1 <= k <= 8:
        raise UnsupportedStepCount("enright supports 1 <= k <= 8")
    nus = enright_nu(k)
    alpha = [Fraction(0)] * (k + 1)
    alpha[k] = Fraction(1)
    alpha[k - 1] = Fraction(-1)
    beta = [Fraction(0)] * (k + 1)
    beta[k] += 1
    for j in range(1, k + 1):
        c = Fraction(1, j) * sum(nus[j:], Fraction(0))
        binom = 1
        for i in range(j + 1):
            if i:
                binom = binom * (j - i + 1) // i
            beta[k - i] += -c * (-1) ** i * binom
    gamma = [Fraction(0)] * (k + 1)
    gamma[k] = sum(nus, Fraction(0))
    scale = lcm(*(q.denominator for q in alpha + beta + gamma))
    return MethodSpec(
        "second_derivative",
        f"Enright{k}",
        alpha=tuple(q * scale for q in alpha),
        beta=tuple(q * scale for q in beta),
        gamma=tuple(q * scale for q in gamma),
    )


def imex_spec(beta1: RationalLike, beta0: RationalLike, name: str = "") -> MethodSpec:
    b1, b0 = as_rational(beta1), as_rational(beta0)
    return MethodSpec("imex", name or f"IMEX({b1},{b0})", beta1=b1, beta0=b0)


# ---------------------------------------------------------------------------
# Characteristic polynomials
# ---------------------------------------------------------------------------


class MembershipResult(enum.Enum):
    IN_STABILITY_REGION = "InStabilityRegion"
    NOT_IN = "NotIn"
    EXCLUDED = "Excluded"
    UNDECIDED = "Undecided"


@dataclass
class MembershipVerdict:
    result: MembershipResult
    unit_disk_class: UnitDiskClass | Undecided | None = None

    def __bool__(self):
        return self.result is MembershipResult.IN_STABILITY_REGION


@dataclass(frozen=True)
class ParamCharPoly:
    """Phi(zeta, params) = sum C_l(params) zeta^l with exact coefficients."""

    k: int
    s: int
    params: tuple[str, ...]
    complex_pair: tuple[str, str] | None
    zeta_coeffs: tuple[MultiPoly, ...]
    name: str = ""
    spec: MethodSpec | None = None

    @property
    def is_mu_form(self) -> bool:
        return self.complex_pair is not None and self.zeta_coeffs[0].variables in (
            ("mu",),
            (),
        )

    # -- exact evaluation ---------------------------------------------------
    def coeffs_at_exact(self, point: Mapping[str, RationalLike]) -> list[GaussianRational]:
        """C_0..C_k at an exact rational parameter point."""
        if self.complex_pair:
            a, b = self.complex_pair
            mu = GaussianRational(as_rational(point[a]), as_rational(point[b]))
            return [_eval_mu_poly(c, mu) for c in self.zeta_coeffs]
        vals = {v: GaussianRational(as_rational(point[v])) for v in self.params}
        return [c.eval(vals) for c in self.zeta_coeffs]

    def coeffs_at_sympy(self, point: Mapping[str, sp.Expr]) -> list[sp.Expr]:
        """C_0..C_k at an exact symbolic (algebraic) parameter point."""
        out = []
        if self.complex_pair:
            a, b = self.complex_pair
            mu = sp.sympify(point[a]) + sp.I * sp.sympify(point[b])
            subs = {sp.Symbol("mu", real=True): mu}
        else:
            subs = {sp.Symbol(v, real=True): sp.sympify(point[v]) for v in self.params}
        for c in self.zeta_coeffs:
            out.append(sp.expand(c.to_sympy().subs(subs)))
        return out

    def coeffs_at_interval(self, point: Mapping[str, Interval]) -> list[ComplexInterval]:
        """C_0..C_k enclosed over a rational box of parameter values."""
        out = []
        if self.complex_pair:
            a, b = self.complex_pair
            mu = ComplexInterval(point[a], point[b])
            for c in self.zeta_coeffs:
                out.append(_eval_mu_poly_interval(c, mu))
            return out
        for c in self.zeta_coeffs:
            re_p, im_p = _split_real_imag(c)
            out.append(
                ComplexInterval(eval_interval(re_p, point), eval_interval(im_p, point))
            )
        return out

    def phi_sympy(self) -> sp.Expr:
        """Phi as a sympy expression in zeta and the parameters."""
        zeta = sp.Symbol("zeta")
        return sp.expand(
            sum(c.to_sympy() * zeta**l for l, c in enumerate(self.zeta_coeffs))
        )

    # -- membership ----------------------------------------------------------
    def membership(self, point: Mapping) -> MembershipVerdict:
        """Exact stability-region membership test at a parameter point.

        Values may be rationals (exact path), sympy expressions (exact
        algebraic path), or Intervals (certified path, may be Undecided).
        """
        values = list(point.values())
        if any(isinstance(v, Interval) for v in values):
            coeffs = self.coeffs_at_interval(point)
            zk = coeffs[-1]
            if zk.is_certainly_zero:
                return MembershipVerdict(MembershipResult.EXCLUDED)
            if zk.possibly_zero:
                return MembershipVerdict(MembershipResult.UNDECIDED)
            verdict = classify_interval(coeffs)
        elif any(isinstance(v, sp.Basic) and not v.is_Rational for v in values):
            coeffs = self.coeffs_at_sympy(point)
            if sp.simplify(coeffs[-1]).is_zero:
                return MembershipVerdict(MembershipResult.EXCLUDED)
            verdict = classify(coeffs)
        else:
            coeffs = self.coeffs_at_exact(point)
            if coeffs[-1].is_zero:
                return MembershipVerdict(MembershipResult.EXCLUDED)
            verdict = classify(coeffs)
        if isinstance(verdict, Undecided):
            return MembershipVerdict(MembershipResult.UNDECIDED, verdict)
        if verdict.in_svn:
            return MembershipVerdict(MembershipResult.IN_STABILITY_REGION, verdict)
        return MembershipVerdict(MembershipResult.NOT_IN, verdict)

    def membership_mu(self, re: RationalLike, im: RationalLike) -> MembershipVerdict:
        a, b = self.complex_pair
        return self.membership({a: as_rational(re), b: as_rational(im)})


def _eval_mu_poly(c: MultiPoly, mu: GaussianRational) -> GaussianRational:
    if not c.variables:
        return c.lex_leading_coeff()
    coeffs = [t.lex_leading_coeff() for t in c.coeffs_in("mu")]
    acc = GaussianRational.of(0)
    for cf in reversed(coeffs):
        acc = acc * mu + cf
    return acc


def _eval_mu_poly_interval(c: MultiPoly, mu: ComplexInterval) -> ComplexInterval:
    if not c.variables:
        g = c.lex_leading_coeff()
        return ComplexInterval.point(g.re, g.im)
    coeffs = [t.lex_leading_coeff() for t in c.coeffs_in("mu")]
    acc = ComplexInterval.point(0)
    for cf in reversed(coeffs):
        acc = acc * mu + ComplexInterval.point(cf.re, cf.im)
    return acc


def _split_real_imag(c: MultiPoly) -> tuple[MultiPoly, MultiPoly]:
    re_terms = {e: GaussianRational(v.re) for e, v in c.terms.items() if v.re}
    im_terms = {e: GaussianRational(v.im) for e, v in c.terms.items() if v.im}
    return MultiPoly(c.variables, re_terms), MultiPoly(c.variables, im_terms)


def char_poly(spec: MethodSpec) -> ParamCharPoly:
    """Compile a MethodSpec into its exact ParamCharPoly."""
    if spec.kind == "imex":
        return imex(spec.beta1, spec.beta0, name=spec.name, spec=spec)
    k = spec.steps
    mu = MultiPoly.var("mu")
    gamma = spec.gamma if spec.kind == "second_derivative" else (Fraction(0),) * (k + 1)
    coeffs = tuple(
        MultiPoly.const(spec.alpha[j], ("mu",))
        - mu.scale(spec.beta[j])
        - (mu * mu).scale(gamma[j])
        for j in range(k + 1)
    )
    if coeffs[-1].is_zero:
        raise ValueError("leading zeta coefficient is identically zero")
    s = 2 if spec.kind == "second_derivative" and any(spec.gamma) else 1
    return ParamCharPoly(
        k=k, s=s, params=("a", "b"), complex_pair=("a", "b"),
        zeta_coeffs=coeffs, name=spec.name, spec=spec,
    )


def imex(
    beta1: RationalLike, beta0: RationalLike, name: str = "", spec: MethodSpec | None = None
) -> ParamCharPoly:
    """Characteristic polynomial of the two-parameter IMEX family.

    P(zeta, xi, eta) = (1 - b0 xi) zeta^3 - (3/4 + b1 xi + (3/2) i eta) zeta^2
                       + xi (3 b0 + 2 b1 - 3) zeta
                       - (1/4 + 2 b0 xi + b1 xi - (3/2) xi)
    """
    b1, b0 = as_rational(beta1), as_rational(beta0)
    xi = MultiPoly.var("xi")
    eta = MultiPoly.var("eta")
    one = MultiPoly.const(1, ("eta", "xi"))
    c3 = one - xi.scale(b0)
    c2 = -(
        one.scale(Fraction(3, 4))
        + xi.scale(b1)
        + eta.scale(GaussianRational.of(0, Fraction(3, 2)))
    )
    c1 = xi.scale(3 * b0 + 2 * b1 - 3)
    c0 = -(
        one.scale(Fraction(1, 4)) + xi.scale(2 * b0 + b1 - Fraction(3, 2))
    )
    coeffs = tuple(c._embed(("eta", "xi")) for c in (c0, c1, c2, c3))
    if spec is None:
        spec = imex_spec(b1, b0, name=name)
    return ParamCharPoly(
        k=3, s=1, params=("xi", "eta"), complex_pair=None,
        zeta_coeffs=coeffs, name=name or spec.name, spec=spec,
    )


# ---------------------------------------------------------------------------
# Degree-drop set
# ---------------------------------------------------------------------------


def degree_drop_set(p: ParamCharPoly) -> list:
    """Exact roots of the leading zeta coefficient C_k.

    For mu-form methods the roots are returned as exact sympy expressions
    (degree of C_k in mu is at most 2); for the IMEX family, a description of
    the vertical line xi = 1/beta0 (or [] when beta0 = 0).
    """
    ck = p.zeta_coeffs[-1]
    if p.complex_pair and ck.variables in (("mu",), ()):
        if ck.degree("mu") <= 0:
            return []
        mu = sp.Symbol("mu")
        expr = ck.to_sympy().subs(sp.Symbol("mu", real=True), mu)
        return sorted(sp.roots(sp.Poly(expr, mu)).keys(), key=sp.default_sort_key)
    # IMEX: C_3 = 1 - beta0*xi, eta free
    b0 = p.spec.beta0 if p.spec else None
    if not b0:
        return []
    return [{"xi": sp.Rational(b0.denominator, b0.numerator), "eta": "any"}]
