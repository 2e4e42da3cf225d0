"""Family-level optimizers for the two-parameter IMEX multistep family.

The family is indexed by (beta1, beta0).  This module implements the
closed-form side of the optimization: the wedge necessary condition for
A-ring stability, the xi -> -infinity limit polynomials along rays, the
sector-bound quartic Q(m) whose largest root m*(beta1, beta0) bounds the
inscribed-sector slope, the shifted-coefficient certificates proving
m* <= 1/2 with equality only at (3/8, 3/4), and grid scans for the sector
and parabola optima including the uniqueness probe at the parabola touch
point (-10/7, 2*sqrt(3/7)).
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

import sympy as sp

from .errors import OnLeftEdge
from .methods import MembershipResult, imex
from .polycore.algebraic import AlgebraicNumber, isolate_real_roots
from .polycore.gaussian import GaussianRational, RationalLike, as_rational
from .rlc.curve import build_curve
from .rlc.solvers import _positive_roots, _strip_min_power, inscribed_parabola, stability_angle


# ---------------------------------------------------------------------------
# wedge
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class WedgePoint:
    beta1: Fraction
    beta0: Fraction
    in_wedge: bool
    on_left_edge: bool


def wedge_test(beta1: RationalLike, beta0: RationalLike) -> WedgePoint:
    """Exact test of the necessary condition W for A-ring stability."""
    b1, b0 = as_rational(beta1), as_rational(beta0)
    in_w = (
        b1 <= Fraction(3, 4)
        and (3 - 2 * b1) / 4 <= b0 <= (9 - 8 * b1) / 8
    )
    on_l = 4 * b0 + 2 * b1 - 3 == 0
    return WedgePoint(b1, b0, in_w, on_l)


# ---------------------------------------------------------------------------
# limit polynomials
# ---------------------------------------------------------------------------


def limit_polynomials(
    beta1: RationalLike, beta0: RationalLike, m: RationalLike = 0
) -> tuple[list[GaussianRational], list[GaussianRational]]:
    """(LHS, MLHS) coefficient lists, ascending (constant term first).

    LHS is the xi -> -infinity limit of the characteristic polynomial along
    the negative real axis; MLHS modifies it for the ray eta = -m*xi by
    adding -(3/2) i m to the zeta^2 coefficient.
    """
    b1, b0 = as_rational(beta1), as_rational(beta0)
    mv = as_rational(m)
    lhs = [
        GaussianRational.of(2 * b0 + b1 - Fraction(3, 2)),
        GaussianRational.of(-(3 * b0 + 2 * b1 - 3)),
        GaussianRational.of(b1),
        GaussianRational.of(b0),
    ]
    mlhs = list(lhs)
    mlhs[2] = mlhs[2] + GaussianRational(Fraction(0), -Fraction(3, 2) * mv)
    return lhs, mlhs


# ---------------------------------------------------------------------------
# sector bound
# ---------------------------------------------------------------------------


def sector_coefficients(
    beta1: RationalLike, beta0: RationalLike
) -> tuple[Fraction, Fraction, Fraction]:
    """(C4, C2, C0) of the quartic Q(m) = C4 m^4 + C2 m^2 + C0."""
    b1, b0 = as_rational(beta1), as_rational(beta0)
    C4 = -9 * (4 * b0 + 2 * b1 - 3) ** 2
    C2 = 2 * (
        864 * b0**4
        + 864 * (2 * b1 - 3) * b0**3
        + 288 * (4 * b1**2 - 13 * b1 + 10) * b0**2
        + 4 * (80 * b1**3 - 420 * b1**2 + 684 * b1 - 351) * b0
        + (3 - 2 * b1) ** 2 * (8 * b1**2 - 36 * b1 + 27)
    )
    C0 = -3 * (4 * b0 + 2 * b1 - 3) ** 2 * (8 * b0 + 8 * b1 - 9)
    return C4, C2, C0


@dataclass
class SectorBound:
    beta1: Fraction
    beta0: Fraction
    C4: Fraction
    C2: Fraction
    C0: Fraction
    m_star: AlgebraicNumber

    @property
    def Q(self) -> list[Fraction]:
        return [self.C4, Fraction(0), self.C2, Fraction(0), self.C0]

    def Q_at(self, m: RationalLike) -> Fraction:
        mv = as_rational(m)
        return self.C4 * mv**4 + self.C2 * mv**2 + self.C0


def sector_bound(beta1: RationalLike, beta0: RationalLike) -> SectorBound:
    """Largest real root m* of the sector-bound quartic on W minus L."""
    wp = wedge_test(beta1, beta0)
    if wp.on_left_edge:
        raise OnLeftEdge("sector bound degenerates on the left edge of the wedge")
    if not wp.in_wedge:
        raise ValueError("parameters outside the wedge W")
    C4, C2, C0 = sector_coefficients(wp.beta1, wp.beta0)
    assert C4 < 0, "C4 must be negative on W minus L"
    assert C0 >= 0, "C0 must be nonnegative on W minus L"
    roots = isolate_real_roots([C4, Fraction(0), C2, Fraction(0), C0])
    m_star = roots[-1]
    assert m_star.sign() >= 0
    return SectorBound(wp.beta1, wp.beta0, C4, C2, C0, m_star)


def q_symbolic() -> sp.Expr:
    """Q as a sympy polynomial in (m, beta1, beta0), from the closed forms."""
    b1, b0, m = sp.symbols("beta1 beta0 m", real=True)
    C4 = -9 * (4 * b0 + 2 * b1 - 3) ** 2
    C2 = 2 * (
        864 * b0**4
        + 864 * (2 * b1 - 3) * b0**3
        + 288 * (4 * b1**2 - 13 * b1 + 10) * b0**2
        + 4 * (80 * b1**3 - 420 * b1**2 + 684 * b1 - 351) * b0
        + (3 - 2 * b1) ** 2 * (8 * b1**2 - 36 * b1 + 27)
    )
    C0 = -3 * (4 * b0 + 2 * b1 - 3) ** 2 * (8 * b0 + 8 * b1 - 9)
    return sp.expand(C4 * m**4 + C2 * m**2 + C0)


# ---------------------------------------------------------------------------
# shifted coefficients
# ---------------------------------------------------------------------------


def shifted_coefficients(
    beta1: RationalLike, beta0: RationalLike
) -> tuple[Fraction, Fraction, Fraction, Fraction, Fraction]:
    """(C0^, ..., C4^): expansion of Q at m = M + 1/2, ascending in M."""
    b1, b0 = as_rational(beta1), as_rational(beta0)
    C4, C2, C0 = sector_coefficients(b1, b0)
    h = Fraction(1, 2)
    # Q(M + 1/2) expanded via the binomial theorem
    c0 = C4 * h**4 + C2 * h**2 + C0
    c1 = 4 * C4 * h**3 + 2 * C2 * h
    c2 = 6 * C4 * h**2 + C2
    c3 = 4 * C4 * h
    c4 = C4
    return c0, c1, c2, c3, c4


def shifted_c0_symbolic() -> sp.Expr:
    """C0^ as a polynomial in (beta1, beta0).

    The reference display of this quantity carries an extra positive factor
    of 16 (integer-cleared form); the sign analysis is unaffected.
    """
    b1, b0, m = sp.symbols("beta1 beta0 m", real=True)
    M = sp.Symbol("M", real=True)
    shifted = q_symbolic().subs(m, M + sp.Rational(1, 2))
    return sp.expand(shifted.subs(M, 0))


# ---------------------------------------------------------------------------
# scans
# ---------------------------------------------------------------------------


def _wedge_grid(grid: int) -> list[tuple[Fraction, Fraction]]:
    """Rational grid on W minus L over the window beta1 in [-3, 3/4].

    beta0 samples stay strictly inside the wedge cross-section, avoiding the
    left edge L by an exact margin; beta1 stays strictly below 3/4 where the
    cross-section degenerates to the wedge vertex on L.
    """
    pts = []
    for i in range(grid):
        b1 = Fraction(-3) + Fraction(15, 4) * Fraction(i, grid)
        lo = (3 - 2 * b1) / 4
        hi = (9 - 8 * b1) / 8
        for j in range(grid):
            b0 = lo + (hi - lo) * Fraction(j + 1, grid + 1)
            pts.append((b1, b0))
    return pts


def sector_scan(grid: int = 32) -> dict:
    """m* over a wedge grid, with the exact m* <= 1/2 certificate per point."""
    if grid < 8:
        raise ValueError("grid must be at least 8")
    delta = Fraction(1, 2) + Fraction(1, 2**20)
    entries = []
    argmax = None
    none_exceed = True
    for b1, b0 in _wedge_grid(grid):
        C4, C2, C0 = sector_coefficients(b1, b0)
        q_above = C4 * delta**4 + C2 * delta**2 + C0
        if q_above >= 0:
            none_exceed = False
        # largest root of the quadratic in m^2, numerically for the report
        disc = C2 * C2 - 4 * C4 * C0
        u = (-C2 - math.sqrt(float(disc))) / (2 * C4) if disc >= 0 else 0.0
        m_approx = math.sqrt(u) if u > 0 else 0.0
        entries.append({"beta1": b1, "beta0": b0, "m_star": m_approx})
        if argmax is None or m_approx > argmax["m_star"]:
            argmax = entries[-1]
    opt = sector_bound(Fraction(3, 8), Fraction(3, 4))
    return {
        "grid": grid,
        "entries": entries,
        "argmax": argmax,
        "none_exceed_half": none_exceed,
        "optimum": {
            "beta1": Fraction(3, 8),
            "beta0": Fraction(3, 4),
            "m_star": opt.m_star,
            "is_half": opt.m_star.equals_rational(Fraction(1, 2)),
        },
    }


SCHEMES = {
    "shu": (Fraction(2, 3), Fraction(4, 9)),
    "sg": (Fraction(0), Fraction(1)),
    "optimal": (Fraction(3, 8), Fraction(3, 4)),
}

SCHEME_CLOSED_FORMS = {
    "shu": 1 / sp.sqrt(135 + 78 * sp.sqrt(3)),
    "sg": sp.sqrt((2 * sp.sqrt(3) - 3) / 3),
    "optimal": sp.Rational(1, 2),
}


def scheme_angles() -> dict:
    """Stability angles of the named schemes via the curve pipeline, checked
    against the closed forms."""
    from .polycore.algebraic import verify_algebraic_identity

    out = {}
    for name, (b1, b0) in SCHEMES.items():
        res = stability_angle(imex(b1, b0))
        verified = verify_algebraic_identity(res.value, SCHEME_CLOSED_FORMS[name])
        out[name] = {
            "beta1": b1,
            "beta0": b0,
            "tangent": res.value,
            "angle_degrees": math.degrees(math.atan(float(res.value))),
            "closed_form_verified": verified,
            "result": res,
        }
    return out


def parabola_discriminant(
    beta1: RationalLike, beta0: RationalLike
) -> tuple[sp.Expr, sp.Expr]:
    """(Delta~(m), Q~(xi, m)) for the given parameters.

    Q~ is F(xi, eta) with eta^2 -> -m xi, divided by xi; Delta~ is its
    discriminant with respect to xi.
    """
    p = imex(beta1, beta0)
    curve = build_curve(p)
    from .polycore.multipoly import _symbol

    x, y = _symbol(curve.plane[0]), _symbol(curve.plane[1])
    m = sp.Symbol("m", real=True)
    poly_y = sp.Poly(curve.F_sympy(), y)
    sub = sp.Integer(0)
    for mono, coeff in zip(poly_y.monoms(), poly_y.coeffs()):
        sub += coeff * (-m * x) ** (mono[0] // 2)
    Qt = _strip_min_power(sp.expand(sub), x)
    delta = sp.discriminant(sp.Poly(Qt, x), x)
    return sp.expand(delta), Qt


def parabola_scan(grid: int = 8) -> dict:
    """Largest-parabola parameter over a wedge grid, with the exact optimum
    confirmed at (1/5, 37/40)."""
    if grid < 8:
        raise ValueError("grid must be at least 8")
    m = sp.Symbol("m", real=True)
    entries = []
    argmax = None
    for b1, b0 in _wedge_grid(grid):
        delta, _ = parabola_discriminant(b1, b0)
        pos = _positive_roots(delta, m, descending=True)
        m_approx = float(pos[0]) if pos else 0.0
        entries.append({"beta1": b1, "beta0": b0, "m_parabola": m_approx})
        if argmax is None or m_approx > argmax["m_parabola"]:
            argmax = entries[-1]
    opt = inscribed_parabola(imex(Fraction(1, 5), Fraction(37, 40)))
    return {
        "grid": grid,
        "entries": entries,
        "argmax": argmax,
        "optimum": {
            "beta1": Fraction(1, 5),
            "beta0": Fraction(37, 40),
            "m": opt.value,
            "is_six_fifths": opt.value.equals_rational(Fraction(6, 5)),
            "touch": opt.witness,
            "result": opt,
        },
    }


# ---------------------------------------------------------------------------
# uniqueness probe at the touch point
# ---------------------------------------------------------------------------

TOUCH_XI = sp.Rational(-10, 7)
TOUCH_ETA = 2 * sp.sqrt(sp.Rational(3, 7))


def _touch_quartic(b1: Fraction, b0: Fraction) -> Fraction:
    """The degree-4 factor of the reduced-root inequality at the touch point."""
    return (
        483840000 * b0**4
        + 967680000 * b1 * b0**3
        - 1989440000 * b0**3
        + 645120000 * b1**2 * b0**2
        - 2967744000 * b1 * b0**2
        + 2890070400 * b0**2
        + 179200000 * b1**3 * b0
        - 1404096000 * b1**2 * b0
        + 2856374400 * b1 * b0
        - 1693045320 * b0
        + 17920000 * b1**4
        - 214336000 * b1**3
        + 673766400 * b1**2
        - 792582600 * b1
        + 301631887
    )


def touch_point_passes(beta1: RationalLike, beta0: RationalLike) -> bool:
    """Exact membership of the touch point via the closed-form reduction.

    Valid for (beta1, beta0) in W: the constant-coefficient degenerate case
    fails, and otherwise membership reduces to a product-of-factors sign test
    whose first two factors are negative on W.
    """
    b1, b0 = as_rational(beta1), as_rational(beta0)
    if b0 == (67 - 40 * b1) / 80 and b1 <= Fraction(23, 40):
        return False
    f1 = 8 * b0 + 8 * b1 - 19
    f2 = 120 * b0 + 40 * b1 - 39
    return f1 * f2 * _touch_quartic(b1, b0) <= 0


def uniqueness_probe(xi0=TOUCH_XI, eta0=TOUCH_ETA, grid: int = 64) -> list:
    """Grid points of W (plus the exact optimum) whose region contains the point.

    At the canonical touch point the exact closed-form reduction is used;
    at any other point the Schur-Cohn membership test runs directly.
    """
    pts = _wedge_grid(grid) + [(Fraction(1, 5), Fraction(37, 40))]
    canonical = xi0 == TOUCH_XI and sp.simplify(eta0 - TOUCH_ETA) == 0
    passing = []
    for b1, b0 in pts:
        if canonical:
            ok = touch_point_passes(b1, b0)
        else:
            p = imex(b1, b0)
            verdict = p.membership({"xi": xi0, "eta": eta0})
            ok = verdict.result is MembershipResult.IN_STABILITY_REGION
        if ok and (b1, b0) not in passing:
            passing.append((b1, b0))
    return passing


def eps_perturbation_reject(eps: RationalLike) -> bool:
    """True when the touch point moved up by eps leaves the optimal region.

    Classifies P at (-10/7, 2*sqrt(3/7) + eps) with exact symbolic arithmetic.
    """
    e = as_rational(eps)
    p = imex(Fraction(1, 5), Fraction(37, 40))
    verdict = p.membership(
        {"xi": TOUCH_XI, "eta": TOUCH_ETA + sp.Rational(e.numerator, e.denominator)}
    )
    return verdict.result is not MembershipResult.IN_STABILITY_REGION


def eps_inequality_value(eps: RationalLike) -> sp.Expr:
    """The closed-form quantity whose nonpositivity is equivalent to membership
    of the eps-shifted touch point (independent route, for cross-checking)."""
    e = sp.Rational(as_rational(eps).numerator, as_rational(eps).denominator)
    s21 = sp.sqrt(21)
    num = 1120 * e * (27783 * e**3 + 31752 * s21 * e**2 + 1649620 * e + 833776 * s21)
    den = (1323 * e**2 + 756 * s21 * e - 50840) ** 2
    return sp.nsimplify(num / den)
