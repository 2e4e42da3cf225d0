"""Algebraization and sampling of root locus curves.

The root locus curve (RLC) of a method is the set of parameter points for
which the characteristic polynomial has a unimodular root.  Substituting
zeta = (i - t)/(i + t)  (the Weierstrass substitution zeta = e^{i theta},
theta = 2 arctan t) and clearing the (i + t)^k denominator turns the
unimodular-root condition into a polynomial system {Q_re(t, x, y) = 0,
Q_im(t, x, y) = 0}; eliminating t by a resultant yields one real bivariate
polynomial F whose zero set contains the RLC.  The single point missed by the
substitution (zeta = -1) is recorded separately as the exceptional set M_{-1}.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction

import sympy as sp

from ..errors import EliminationCollapse, OddPowersPresent, PoleOnGrid
from ..methods import ParamCharPoly
from ..polycore.gaussian import GR_I, GR_ONE, GaussianRational, as_rational
from ..polycore.multipoly import MultiPoly, _symbol

_T = sp.Symbol("t", real=True)


@dataclass(frozen=True)
class ImplicitCurve:
    """F(x, y) = 0 superset of the RLC, plus the exceptional set M_{-1}."""

    F: MultiPoly
    plane: tuple[str, str]  # ('a', 'b') for mu = a + bi, ('xi', 'eta') for IMEX
    exceptional: tuple[tuple[sp.Expr, sp.Expr], ...]
    normalization: str
    char: ParamCharPoly

    def F_sympy(self) -> sp.Expr:
        return self.F.to_sympy()


def _plane_coeffs_sympy(p: ParamCharPoly) -> tuple[list[sp.Expr], tuple[str, str]]:
    """zeta coefficients as sympy expressions in the two real plane variables."""
    if p.complex_pair:
        xa, yb = p.complex_pair
        mu = _symbol(xa) + sp.I * _symbol(yb)
        coeffs = [
            sp.expand(c.to_sympy().subs(_symbol("mu"), mu)) for c in p.zeta_coeffs
        ]
        return coeffs, (xa, yb)
    coeffs = [c.to_sympy() for c in p.zeta_coeffs]
    return coeffs, ("xi", "eta")


def _leading_modulus_sq(p: ParamCharPoly, plane: tuple[str, str]) -> sp.Expr:
    """|C_k|^2 as a real polynomial in the plane variables."""
    coeffs, _ = _plane_coeffs_sympy(p)
    ck = coeffs[-1]
    return sp.expand(sp.re(ck) ** 2 + sp.im(ck) ** 2)


def _divide_out(expr: sp.Expr, factor: sp.Expr, gens) -> tuple[sp.Expr, int]:
    """Divide expr by factor as often as it divides exactly."""
    fp = sp.Poly(factor, *gens)
    if fp.total_degree() == 0:
        return expr, 0
    count = 0
    poly = sp.Poly(expr, *gens)
    while True:
        quo, rem = sp.div(poly, fp)
        if not rem.is_zero and not rem.as_expr().equals(0):
            break
        poly = quo
        count += 1
    return poly.as_expr(), count


def build_curve(p: ParamCharPoly) -> ImplicitCurve:
    """Algebraize the RLC of a ParamCharPoly.

    Pipeline: Weierstrass substitution, clear the (i+t)^k denominator, split
    into real and imaginary parts, eliminate t by a resultant, strip content
    and spurious powers of the leading-coefficient modulus, and normalize
    (IMEX: F(0,1) = 9; otherwise integer coefficients, content 1, positive
    lexicographic leading term).
    """
    k = p.k
    coeffs, plane = _plane_coeffs_sympy(p)
    x, y = _symbol(plane[0]), _symbol(plane[1])
    N = sp.expand(
        sum(coeffs[l] * (sp.I - _T) ** l * (sp.I + _T) ** (k - l) for l in range(k + 1))
    )
    q_re = sp.expand(sp.re(N))
    q_im = sp.expand(sp.im(N))
    F = sp.resultant(q_re, q_im, _T)
    F = sp.expand(F)
    if F == 0:
        raise EliminationCollapse(
            "resultant of Q_re and Q_im vanished identically"
        )
    notes = []
    # strip spurious factors: powers of |C_k|^2 (or 1 - beta0*xi for IMEX)
    strip_factors = [_leading_modulus_sq(p, plane)]
    if p.complex_pair is None and p.spec is not None and p.spec.beta0:
        b0 = p.spec.beta0
        strip_factors.append(1 - sp.Rational(b0.numerator, b0.denominator) * x)
    for fac in strip_factors:
        F, n = _divide_out(F, fac, (x, y))
        if n:
            notes.append(f"divided out ({sp.sstr(fac)})^{n}")
    Fm = MultiPoly.from_sympy(F, [plane[0], plane[1]])
    if p.complex_pair is None:
        # IMEX normalization: F(0, 1) = 9
        val = Fm.eval({"xi": Fraction(0), "eta": Fraction(1)})
        if val.is_zero or not val.is_real:
            raise EliminationCollapse("cannot normalize: F(0,1) = 0")
        Fm = Fm.scale(Fraction(9) / val.re)
        notes.append("scaled so F(0,1) = 9")
    else:
        Fm = Fm.primitive()
        if Fm.lex_leading_coeff().re < 0:
            Fm = -Fm
        notes.append("integer coefficients, content 1, positive lex leading term")
    # evenness in the second plane variable (conjugate symmetry)
    flipped = Fm.subs({plane[1]: -MultiPoly.var(plane[1])})
    if flipped != Fm:
        raise OddPowersPresent("curve polynomial is not even in " + plane[1])
    exceptional = tuple(_exceptional_set(p, coeffs, plane))
    return ImplicitCurve(
        F=Fm, plane=plane, exceptional=exceptional,
        normalization="; ".join(notes), char=p,
    )


def _exceptional_set(p, coeffs, plane) -> list[tuple[sp.Expr, sp.Expr]]:
    """M_{-1}: parameter points with Phi(-1, .) = 0."""
    x, y = _symbol(plane[0]), _symbol(plane[1])
    phi_m1 = sp.expand(sum(c * (-1) ** l for l, c in enumerate(coeffs)))
    sols = sp.solve([sp.re(phi_m1), sp.im(phi_m1)], [x, y], dict=True)
    out = []
    for sol in sols:
        xv = sp.simplify(sol.get(x, x))
        yv = sp.simplify(sol.get(y, y))
        if xv.is_real is False or yv.is_real is False:
            continue
        if xv.free_symbols or yv.free_symbols:
            continue
        out.append((xv, yv))
    return out


# ---------------------------------------------------------------------------
# Curve sampling
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class CurveSample:
    branch: int
    t: Fraction | float
    re: object  # exact Fraction / GaussianRational parts or float
    im: object


@dataclass
class SampleReport:
    samples: list[CurveSample] = field(default_factory=list)
    skipped: list[Fraction] = field(default_factory=list)  # poles sigma(w) = 0


def _rational_tan_grid(n: int) -> list[Fraction]:
    """Rational t values approximating tan(theta/2) on a uniform theta grid."""
    import math

    out = []
    for j in range(n):
        theta = -math.pi + 2 * math.pi * (j + Fraction(1, 2)) / n
        out.append(Fraction(math.tan(theta / 2)).limit_denominator(10**12))
    return sorted(set(out))


def sample_curve(p: ParamCharPoly, n: int) -> SampleReport:
    """Sample the RLC with n points per branch.

    LMM branches are exact: mu = rho(w)/sigma(w) with w = (i-t)/(i+t) at
    rational t, so every emitted point lies on the algebraized curve exactly.
    Second-derivative and IMEX branches are computed at high precision.
    """
    if n < 2:
        raise ValueError("n must be at least 2")
    if p.complex_pair is not None and p.s == 1:
        return _sample_lmm(p, n)
    if p.complex_pair is not None:
        return _sample_second_derivative(p, n)
    return _sample_imex(p, n)


def _eval_gaussian_poly(coeffs: list[Fraction], w: GaussianRational) -> GaussianRational:
    acc = GaussianRational.of(0)
    for c in reversed(coeffs):
        acc = acc * w + GaussianRational(c)
    return acc


def _sample_lmm(p: ParamCharPoly, n: int) -> SampleReport:
    spec = p.spec
    rho = [as_rational(c) for c in spec.alpha]
    sig = [as_rational(c) for c in spec.beta]
    report = SampleReport()
    for t in _rational_tan_grid(n):
        w = (GR_I - t * GR_ONE) / (GR_I + t * GR_ONE)
        s_val = _eval_gaussian_poly(sig, w)
        if s_val.is_zero:
            report.skipped.append(t)
            continue
        mu = _eval_gaussian_poly(rho, w) / s_val
        report.samples.append(CurveSample(0, t, mu.re, mu.im))
    for j, (xe, ye) in enumerate(_exceptional_points_exact(p)):
        report.samples.append(CurveSample(-1 - j, Fraction(0), xe, ye))
    return report


def _exceptional_points_exact(p: ParamCharPoly):
    coeffs, plane = _plane_coeffs_sympy(p)
    return _exceptional_set(p, coeffs, plane)


def _sample_second_derivative(p: ParamCharPoly, n: int) -> SampleReport:
    import mpmath

    report = SampleReport()
    mu = sp.Symbol("mu")
    zeta = sp.Symbol("zeta")
    phi = sum(
        c.to_sympy().subs(_symbol("mu"), mu) * zeta**l
        for l, c in enumerate(p.zeta_coeffs)
    )
    poly_mu = sp.Poly(phi, mu)
    cs = [sp.lambdify(zeta, c, "mpmath") for c in poly_mu.all_coeffs()]
    with mpmath.workdps(40):
        prev: list[mpmath.mpc] = []
        for j in range(n):
            theta = -mpmath.pi + 2 * mpmath.pi * (j + mpmath.mpf(1) / 2) / n
            w = mpmath.exp(1j * theta)
            coeff_vals = [c(w) for c in cs]
            try:
                roots = mpmath.polyroots(coeff_vals, maxsteps=200, extraprec=80)
            except (ZeroDivisionError, mpmath.libmp.NoConvergence):
                report.skipped.append(Fraction(float(theta)).limit_denominator(10**9))
                continue
            if prev and len(roots) == len(prev):
                # order branches by continuity with the previous theta
                if abs(roots[0] - prev[0]) + abs(roots[1] - prev[1]) > abs(
                    roots[0] - prev[1]
                ) + abs(roots[1] - prev[0]):
                    roots = list(reversed(roots))
            prev = list(roots)
            for br, r in enumerate(roots):
                report.samples.append(
                    CurveSample(br, float(theta), float(r.real), float(r.imag))
                )
    return report


def _sample_imex(p: ParamCharPoly, n: int) -> SampleReport:
    """IMEX RLC: Phi(w, xi, eta) = 0 is complex-linear in (xi, eta)."""
    report = SampleReport()
    for t in _rational_tan_grid(n):
        w = (GR_I - t * GR_ONE) / (GR_I + t * GR_ONE)
        # Phi = A + xi*B + eta*C with Gaussian-rational A, B, C at w
        A = GaussianRational.of(0)
        B = GaussianRational.of(0)
        C = GaussianRational.of(0)
        wl = GaussianRational.of(1)
        for l, cf in enumerate(p.zeta_coeffs):
            groups: dict[tuple[int, int], GaussianRational] = {}
            for exps, g in cf.terms.items():
                key = tuple(exps)
                groups[key] = g
            for (e_eta, e_xi), g in groups.items():
                if e_eta == 0 and e_xi == 0:
                    A = A + g * wl
                elif e_xi == 1 and e_eta == 0:
                    B = B + g * wl
                elif e_eta == 1 and e_xi == 0:
                    C = C + g * wl
                else:
                    raise ValueError("IMEX coefficients must be linear in (xi, eta)")
            wl = wl * w
        # solve re/im 2x2 linear system for (xi, eta)
        det = B.re * C.im - B.im * C.re
        if det == 0:
            report.skipped.append(t)
            continue
        xi_v = (-A.re * C.im + A.im * C.re) / det
        eta_v = (-B.re * A.im + B.im * A.re) / det
        report.samples.append(CurveSample(0, t, xi_v, eta_v))
    return report
