"""Tangency solvers on algebraized root locus curves.

Each solver follows the same shape: build the implicit curve F, derive the
tangency system for the shape family (sector through the origin, disk tangent
at the origin, down-opening parabola, vertical line), eliminate down to a
univariate candidate polynomial, isolate real roots per irreducible factor,
and hand candidates to the membership-sampling verification protocol in the
order dictated by the quantity (descending for maximal shapes, ascending for
the stiff abscissa).  The first verified candidate wins; every rejection is
recorded in the result's certificate.
"""

from __future__ import annotations

import functools
from dataclasses import dataclass, field
from fractions import Fraction

import sympy as sp

from ..errors import (
    AllCandidatesRejected,
    EliminationCollapse,
    NoCandidates,
)
from ..methods import ParamCharPoly
from ..polycore.algebraic import AlgebraicNumber, isolate_real_roots
from ..polycore.interval import Interval, eval_interval
from ..polycore.multipoly import MultiPoly, _symbol
from .curve import ImplicitCurve, build_curve, sample_curve
from .verify import (
    member,
    verify_disk,
    verify_halfplane,
    verify_imag_axis,
    verify_parabola,
    verify_sector,
)


@dataclass
class ShapeResult:
    quantity: str
    value: AlgebraicNumber
    witness: list[tuple]
    certificate: dict

    def to_json_dict(self, digits: int = 20) -> dict:
        iv = self.value.interval
        return {
            "quantity": self.quantity,
            "defining_poly": [int(c) for c in self.value.defining_poly],
            "interval": [
                f"{iv.lo.numerator}/{iv.lo.denominator}",
                f"{iv.hi.numerator}/{iv.hi.denominator}",
            ],
            "approx": self.value.approx(digits),
            "digits": digits,
            "witness": [[_coord_str(x), _coord_str(y)] for x, y in self.witness],
            "certificate": self.certificate,
        }


# ---------------------------------------------------------------------------
# shared helpers
# ---------------------------------------------------------------------------


def _coord_str(v) -> str:
    if isinstance(v, AlgebraicNumber):
        if v.is_rational:
            q = v.as_rational()
            return f"{q.numerator}/{q.denominator}"
        return v.approx(15)
    if isinstance(v, Fraction):
        return f"{v.numerator}/{v.denominator}"
    return str(v)


def _strip_min_power(expr: sp.Expr, sym: sp.Symbol) -> sp.Expr:
    """Divide out the largest power of sym dividing expr."""
    if expr == 0:
        return expr
    poly = sp.Poly(expr, sym)
    m = min(mon[0] for mon in poly.monoms())
    if m == 0:
        return expr
    return sp.expand(sp.cancel(expr / sym**m))


def _divide_out_all(expr: sp.Expr, factor: sp.Expr, gens) -> sp.Expr:
    poly = sp.Poly(expr, *gens)
    fp = sp.Poly(factor, *gens)
    while True:
        quo, rem = sp.div(poly, fp)
        if not rem.is_zero:
            return poly.as_expr()
        poly = quo


def _fractions(poly: sp.Poly) -> list[Fraction]:
    return [Fraction(sp.Rational(c).p, sp.Rational(c).q) for c in poly.all_coeffs()]


def _real_roots_factored(expr: sp.Expr, sym: sp.Symbol) -> list[AlgebraicNumber]:
    """Distinct real roots, one AlgebraicNumber per root, with the defining
    polynomial taken from the irreducible factor the root belongs to."""
    poly = sp.Poly(expr, sym)
    out: list[AlgebraicNumber] = []
    for fac, _mult in sp.factor_list(poly)[1]:
        pf = sp.Poly(fac, sym)
        if pf.degree() < 1:
            continue
        out.extend(isolate_real_roots(_fractions(pf)))
    return out


def _positive_roots(expr: sp.Expr, sym: sp.Symbol, descending: bool) -> list[AlgebraicNumber]:
    roots = [r for r in _real_roots_factored(expr, sym) if r.sign() > 0]
    roots.sort(key=functools.cmp_to_key(lambda a, b: a._cmp(b)), reverse=descending)
    return roots


def _witness_box_check(
    F: MultiPoly,
    G: MultiPoly,
    plane: tuple[str, str],
    xr: AlgebraicNumber,
    yr: AlgebraicNumber,
) -> bool:
    """True when both F and G straddle zero on the refined (x, y) box."""
    xn, yn = plane
    for w in (Fraction(1, 2**20), Fraction(1, 2**34)):
        xr.refine(w)
        yr.refine(w)
        box = {xn: xr.interval, yn: yr.interval}
        if not eval_interval(F, box).contains_zero:
            return False
        if not eval_interval(G, box).contains_zero:
            return False
    return True


def tangency_points(
    curve: ImplicitCurve, G: MultiPoly | None = None
) -> list[tuple[AlgebraicNumber, AlgebraicNumber]]:
    """Common zeros of {F = 0, G = 0} in the open upper-left quadrant.

    Eliminates each variable in turn, isolates real roots, and pairs x-roots
    with y-roots by requiring both polynomials to straddle zero on the refined
    interval box.
    """
    x, y = curve.plane
    F = curve.F
    if G is None:
        G = MultiPoly.var(x) * F.diff(x) + MultiPoly.var(y) * F.diff(y)
    xs_, ys_ = _symbol(x), _symbol(y)
    Fe, Ge = F.to_sympy(), G.to_sympy()
    Ra = sp.resultant(Fe, Ge, ys_)
    Rb = sp.resultant(Fe, Ge, xs_)
    if Ra == 0 or Rb == 0:
        raise EliminationCollapse("tangency elimination vanished identically")
    xroots = [r for r in _real_roots_factored(Ra, xs_) if r.sign() < 0]
    yroots = [r for r in _real_roots_factored(Rb, ys_) if r.sign() > 0]
    pairs = []
    for xr in xroots:
        for yr in yroots:
            if _witness_box_check(F, G, curve.plane, xr, yr):
                pairs.append((xr, yr))
    return pairs


def _reject_record(m: AlgebraicNumber, cert) -> dict:
    return {
        "value_approx": m.approx(12),
        "defining_poly_degree": len(m.defining_poly) - 1,
        "certificate": cert.to_dict(),
    }


# ---------------------------------------------------------------------------
# stability angle
# ---------------------------------------------------------------------------


def stability_angle(
    p: ParamCharPoly, curve: ImplicitCurve | None = None
) -> ShapeResult:
    """Largest verified sector slope m = tan(alpha) with A_alpha in S.

    Candidates come from the tangent-through-origin system
    {F = 0, x dF/dx + y dF/dy = 0}: substituting y = -s x and eliminating x
    gives a univariate polynomial in the slope s.
    """
    if curve is None:
        curve = build_curve(p)
    xn, yn = curve.plane
    x, y = _symbol(xn), _symbol(yn)
    s = sp.Symbol("s", real=True)
    Fe = curve.F_sympy()
    Ge = sp.expand(x * sp.diff(Fe, x) + y * sp.diff(Fe, y))
    Fs = _strip_min_power(sp.expand(Fe.subs(y, -s * x)), x)
    Gs = _strip_min_power(sp.expand(Ge.subs(y, -s * x)), x)
    Rs = sp.resultant(Fs, Gs, x)
    if Rs == 0:
        raise EliminationCollapse("slope elimination vanished identically")
    cands = _positive_roots(Rs, s, descending=True)
    if not cands:
        raise NoCandidates("no positive slope candidates")
    pairs = tangency_points(curve)
    rejected = []
    for m in cands:
        scale = _matching_witness_scale(pairs, m)
        ok, cert = verify_sector(p, m, witness_scale=scale)
        if ok:
            wit = [pair for pair in pairs if _pair_matches_slope(pair, m)]
            return ShapeResult(
                quantity="angle_tangent",
                value=m,
                witness=wit,
                certificate={
                    "verification": cert.to_dict(),
                    "rejected_candidates": rejected,
                    "normalization": curve.normalization,
                },
            )
        rejected.append(_reject_record(m, cert))
    raise AllCandidatesRejected("all slope candidates failed verification")


def _pair_matches_slope(pair, m: AlgebraicNumber) -> bool:
    xr, yr = pair
    xr.refine(Fraction(1, 2**40))
    yr.refine(Fraction(1, 2**40))
    m.refine(Fraction(1, 2**40))
    ratio = -float(yr.interval.mid) / float(xr.interval.mid) if xr.interval.mid else 0.0
    mv = float(m.interval.mid)
    return abs(ratio - mv) <= 1e-6 * max(1.0, abs(mv))


def _matching_witness_scale(pairs, m: AlgebraicNumber) -> float | None:
    for pair in pairs:
        if _pair_matches_slope(pair, m):
            return abs(float(pair[0].interval.mid))
    return None


# ---------------------------------------------------------------------------
# stability radius
# ---------------------------------------------------------------------------


def stability_radius(
    p: ParamCharPoly, curve: ImplicitCurve | None = None
) -> ShapeResult:
    """Largest verified r with the disk |z + r| <= r inside S.

    Tangency system {F = 0, (x+r)^2 + y^2 - r^2 = 0,
    2y dF/dx - 2(x+r) dF/dy = 0}; y is eliminated against the circle from
    both F and the tangency polynomial, spurious x (x + 2r) factors are
    divided out, and the final resultant in x leaves a univariate polynomial
    in r.
    """
    if curve is None:
        curve = build_curve(p)
    xn, yn = curve.plane
    x, y = _symbol(xn), _symbol(yn)
    r = sp.Symbol("r", real=True)
    Fe = curve.F_sympy()
    circ = (x + r) ** 2 + y**2 - r**2
    T = sp.expand(2 * y * sp.diff(Fe, x) - 2 * (x + r) * sp.diff(Fe, y))
    R2 = sp.resultant(Fe, circ, y)
    R3 = sp.resultant(T, circ, y)
    R3 = _divide_out_all(R3, x, (x, r))
    R3 = _divide_out_all(R3, x + 2 * r, (x, r))
    RR = sp.resultant(R2, R3, x)
    if RR == 0:
        raise EliminationCollapse("radius elimination vanished identically")
    prefactor_degree = sp.Poly(RR, r).degree()
    cands = _positive_roots(RR, r, descending=True)
    if not cands:
        raise NoCandidates("no positive radius candidates")
    rejected = []
    for rv in cands:
        angle = _disk_touch_angle(curve, rv)
        ok, cert = verify_disk(p, rv, witness_angle=angle)
        if ok:
            wit = _disk_touch_witness(curve, rv, angle)
            return ShapeResult(
                quantity="radius",
                value=rv,
                witness=wit,
                certificate={
                    "verification": cert.to_dict(),
                    "rejected_candidates": rejected,
                    "prefactor_degree_r": int(prefactor_degree),
                    "normalization": curve.normalization,
                },
            )
        rejected.append(_reject_record(rv, cert))
    raise AllCandidatesRejected("all radius candidates failed verification")


def _disk_touch_angle(curve: ImplicitCurve, rv: AlgebraicNumber) -> float | None:
    """Angle phi of the near-tangency point on the circle, found numerically."""
    import math

    rv.refine(Fraction(1, 2**40))
    rmid = float(rv.interval.mid)
    xn, yn = curve.plane
    f = sp.lambdify((_symbol(xn), _symbol(yn)), curve.F_sympy(), "math")
    best_phi, best_val = None, float("inf")
    n = 4096
    for j in range(1, n):
        phi = math.pi * j / n
        xv = -rmid + rmid * math.cos(phi)
        yv = rmid * math.sin(phi)
        v = abs(f(xv, yv))
        norm = v / max(1.0, abs(xv) + abs(yv)) ** 2
        if norm < best_val:
            best_val, best_phi = norm, phi
    return best_phi


def _disk_touch_witness(curve, rv, phi) -> list[tuple]:
    import math

    if phi is None:
        return []
    rmid = float(rv.interval.mid)
    return [
        (
            Fraction(-rmid + rmid * math.cos(phi)).limit_denominator(10**12),
            Fraction(rmid * math.sin(phi)).limit_denominator(10**12),
        )
    ]


# ---------------------------------------------------------------------------
# inscribed parabola
# ---------------------------------------------------------------------------


def inscribed_parabola(
    p: ParamCharPoly, curve: ImplicitCurve | None = None
) -> ShapeResult:
    """Largest verified m with {x <= 0, y^2 <= m |x|} inside S.

    F is even in y, so substituting y^2 = -m x is exact; dividing by x and
    taking the discriminant with respect to x yields the candidate polynomial
    in m.
    """
    if curve is None:
        curve = build_curve(p)
    xn, yn = curve.plane
    x, y = _symbol(xn), _symbol(yn)
    m = sp.Symbol("m", real=True)
    Fe = curve.F_sympy()
    poly_y = sp.Poly(Fe, y)
    sub = sp.Integer(0)
    for mono, coeff in zip(poly_y.monoms(), poly_y.coeffs()):
        deg = mono[0]
        assert deg % 2 == 0, "curve invariant guarantees even powers only"
        sub += coeff * (-m * x) ** (deg // 2)
    Qt = _strip_min_power(sp.expand(sub), x)
    if sp.Poly(Qt, x).degree() < 2:
        raise NoCandidates("degenerate parabola substitution")
    delta = sp.discriminant(sp.Poly(Qt, x), x)
    if delta == 0:
        raise EliminationCollapse("parabola discriminant vanished identically")
    cands = _positive_roots(delta, m, descending=True)
    if not cands:
        raise NoCandidates("no positive parabola candidates")
    rejected = []
    for mv in cands:
        touch = _parabola_touch(Qt, x, m, mv)
        q_star = touch[1] if touch else None
        ok, cert = verify_parabola(p, mv, witness_q=q_star)
        if ok:
            wit = [touch[0]] if touch else []
            return ShapeResult(
                quantity="parabola_m",
                value=mv,
                witness=wit,
                certificate={
                    "verification": cert.to_dict(),
                    "rejected_candidates": rejected,
                    "discriminant_m": [
                        int(c) for c in sp.Poly(sp.primitive(delta)[1], m).all_coeffs()
                    ],
                    "normalization": curve.normalization,
                },
            )
        rejected.append(_reject_record(mv, cert))
    raise AllCandidatesRejected("all parabola candidates failed verification")


def _parabola_touch(Qt, x, m, mv: AlgebraicNumber):
    """Touch point of the parabola with the curve: double root of Qt in x.

    Exact (sympy gcd) for rational m; numeric otherwise.  Returns
    ((xi, eta), q) with q = eta float for sampling clusters, or None.
    """
    import math

    if mv.is_rational or mv.equals_rational(_try_rationalize(mv)):
        mq = mv.as_rational()
        Qm = sp.Poly(Qt.subs(m, sp.Rational(mq.numerator, mq.denominator)), x)
        g = sp.gcd(Qm, Qm.diff(x))
        roots = [rt for rt in sp.roots(sp.Poly(g, x)) if rt.is_real and rt < 0]
        if roots:
            xi0 = roots[0]
            eta0 = sp.sqrt(-sp.Rational(mq.numerator, mq.denominator) * xi0)
            return (xi0, eta0), float(eta0)
        return None
    mv.refine(Fraction(1, 2**40))
    m_mid = float(mv.interval.mid)
    Qm = sp.Poly(Qt.subs(m, sp.Rational(Fraction(m_mid).limit_denominator(10**12))), x)
    reals = [complex(rt).real for rt in Qm.nroots() if abs(complex(rt).imag) < 1e-6]
    negs = sorted(r for r in reals if r < 0)
    # a double root appears as a close pair
    for a1, a2 in zip(negs, negs[1:]):
        if abs(a1 - a2) < 1e-4 * max(1.0, abs(a1)):
            xi0 = (a1 + a2) / 2
            return (xi0, math.sqrt(-m_mid * xi0)), math.sqrt(-m_mid * xi0)
    if negs:
        xi0 = negs[0]
        return (xi0, math.sqrt(-m_mid * xi0)), math.sqrt(-m_mid * xi0)
    return None


def _try_rationalize(mv: AlgebraicNumber) -> Fraction:
    mv.refine(Fraction(1, 2**60))
    return Fraction(float(mv.interval.mid)).limit_denominator(10**6)


# ---------------------------------------------------------------------------
# stiff-stability abscissa
# ---------------------------------------------------------------------------


def stiff_abscissa(
    p: ParamCharPoly, curve: ImplicitCurve | None = None
) -> ShapeResult:
    """Smallest verified D > 0 with the half-plane Re z <= -D inside S.

    Candidates: vertical-line tangencies (discriminant of F(-D, y) w.r.t. y)
    plus the y = 0 crossings F(-D, 0) = 0.
    """
    if curve is None:
        curve = build_curve(p)
    xn, yn = curve.plane
    x, y = _symbol(xn), _symbol(yn)
    D = sp.Symbol("D", real=True)
    Fe = curve.F_sympy()
    FD = sp.expand(Fe.subs(x, -D))
    disc = sp.discriminant(sp.Poly(FD, y), y)
    axis = sp.expand(FD.subs(y, 0))
    cands: list[AlgebraicNumber] = []
    if disc != 0:
        cands.extend(_positive_roots(disc, D, descending=False))
    if axis != 0 and sp.Poly(axis, D).degree() > 0:
        cands.extend(_positive_roots(axis, D, descending=False))
    cands.sort(key=functools.cmp_to_key(lambda a, b: a._cmp(b)))
    if not cands:
        raise NoCandidates("no positive abscissa candidates")
    rejected = []
    for dv in cands:
        wy = _abscissa_touch_y(FD, D, y, dv)
        ok, cert = verify_halfplane(p, dv, witness_y=wy)
        if ok:
            wit = [(-_mid_fraction(dv), Fraction(wy).limit_denominator(10**12) if wy else Fraction(0))]
            return ShapeResult(
                quantity="abscissa",
                value=dv,
                witness=wit,
                certificate={
                    "verification": cert.to_dict(),
                    "rejected_candidates": rejected,
                    "normalization": curve.normalization,
                },
            )
        rejected.append(_reject_record(dv, cert))
    raise AllCandidatesRejected("all abscissa candidates failed verification")


def _mid_fraction(v: AlgebraicNumber) -> Fraction:
    v.refine(Fraction(1, 2**40))
    return v.interval.mid


def _abscissa_touch_y(FD, D, y, dv: AlgebraicNumber) -> float | None:
    dv.refine(Fraction(1, 2**40))
    d_mid = sp.Rational(Fraction(float(dv.interval.mid)).limit_denominator(10**12))
    Fy = sp.Poly(FD.subs(D, d_mid), y)
    reals = sorted(
        complex(rt).real
        for rt in Fy.nroots()
        if abs(complex(rt).imag) < 1e-6 and complex(rt).real > 0
    )
    for a1, a2 in zip(reals, reals[1:]):
        if abs(a1 - a2) < 1e-4 * max(1.0, abs(a1)):
            return (a1 + a2) / 2
    return reals[0] if reals else None


# ---------------------------------------------------------------------------
# imaginary-axis interval
# ---------------------------------------------------------------------------


@dataclass
class ImagAxisResult:
    kind: str  # 'interval' | 'empty' | 'unbounded'
    shape: ShapeResult | None = None


def imag_axis_interval(
    p: ParamCharPoly, curve: ImplicitCurve | None = None
) -> ImagAxisResult:
    """Maximal interval of the imaginary axis around the origin inside S."""
    if curve is None:
        curve = build_curve(p)
    xn, yn = curve.plane
    y = _symbol(yn)
    Fb = sp.expand(curve.F_sympy().subs(_symbol(xn), 0))
    pos = (
        _positive_roots(Fb, y, descending=False)
        if Fb != 0 and sp.Poly(Fb, y).degree() > 0
        else []
    )
    probe = _mid_fraction(pos[0]) / 2**10 if pos else Fraction(1, 2**10)
    if not member(p, Fraction(0), probe):
        return ImagAxisResult("empty")
    if not pos:
        return ImagAxisResult("unbounded")
    rejected = []
    for bv in pos:
        ok, cert = verify_imag_axis(p, bv)
        if ok:
            return ImagAxisResult(
                "interval",
                ShapeResult(
                    quantity="imag_axis_halfwidth",
                    value=bv,
                    witness=[(Fraction(0), _mid_fraction(bv))],
                    certificate={
                        "verification": cert.to_dict(),
                        "rejected_candidates": rejected,
                        "normalization": curve.normalization,
                    },
                ),
            )
        rejected.append(_reject_record(bv, cert))
    raise AllCandidatesRejected("no axis candidate verified")


# ---------------------------------------------------------------------------
# numeric tangency candidates (for heavy second-derivative pipelines)
# ---------------------------------------------------------------------------


def angle_candidates_numeric(p: ParamCharPoly, n: int = 8192) -> list[dict]:
    """Approximate tangent-through-origin candidates from sampled branches.

    A ray through the origin is tangent to the curve where x y' - y x' = 0
    along a branch; sign changes of that cross product between consecutive
    samples in the open upper-left quadrant give candidate slopes.  Used for
    step counts where the exact elimination is beyond desk scale; candidates
    are then confirmed or rejected by exact membership sampling of rational
    rays.
    """
    report = sample_curve(p, n)
    by_branch: dict[int, list] = {}
    for smp in report.samples:
        if smp.branch >= 0:
            by_branch.setdefault(smp.branch, []).append(smp)
    out = []
    for branch, pts in by_branch.items():
        for s1, s2, s3 in zip(pts, pts[1:], pts[2:]):
            cross1 = float(s1.re) * (float(s2.im) - float(s1.im)) - float(s1.im) * (
                float(s2.re) - float(s1.re)
            )
            cross2 = float(s2.re) * (float(s3.im) - float(s2.im)) - float(s2.im) * (
                float(s3.re) - float(s2.re)
            )
            xv, yv = float(s2.re), float(s2.im)
            if xv < 0 and yv > 0 and cross1 * cross2 <= 0 and cross1 != cross2:
                out.append(
                    {
                        "branch": branch,
                        "point": (xv, yv),
                        "slope": -yv / xv,
                        "angle_degrees": __import__("math").degrees(
                            __import__("math").atan2(yv, -xv)
                        ),
                    }
                )
    out.sort(key=lambda c: -c["slope"])
    return out


def ray_rejection_witness(
    p: ParamCharPoly, slope: Fraction, extra_radii: list[Fraction] | None = None
) -> tuple[Fraction, Fraction] | None:
    """A NotIn point on the ray y = slope * |x| (exact sampling), if any."""
    from .verify import _log_radii

    slope = Fraction(slope)
    radii = _log_radii(512, lo=-40, hi=20)
    if extra_radii:
        radii += extra_radii
    for r in radii:
        if not member(p, -r, slope * r):
            return (-r, slope * r)
    return None
