"""Membership-sampling verification of candidate optimal shapes.

A tangency pipeline produces candidate parameters (sector slope, disk radius,
parabola width, half-plane abscissa).  Each candidate is checked by exact
membership sampling:

* the tested shape is shrunk by an exact rational margin (the candidate's
  isolating interval refined to relative width 2^-40), so every sampled
  boundary/interior point is exactly rational and classification is exact;
* >= 64 boundary points per component (logarithmically spaced, radii
  2^-10 .. 2^20) and >= 64 interior points must all be InStabilityRegion;
* maximality requires >= 1 rejection witness: a NotIn sample on the shape
  inflated by (1 + 2^-10), searched on a log grid plus a cluster around the
  tangency witness.

Conjugate symmetry (curves are even in the second plane variable) lets the
sampler cover only the upper half plane.
"""

from __future__ import annotations

from dataclasses import asdict, dataclass, field
from fractions import Fraction

from ..errors import VerificationUndecided
from ..methods import MembershipResult, ParamCharPoly
from ..polycore.algebraic import AlgebraicNumber


def _plane_names(p: ParamCharPoly) -> tuple[str, str]:
    return p.complex_pair if p.complex_pair else ("xi", "eta")


def member(p: ParamCharPoly, x: Fraction, y: Fraction) -> bool:
    """True iff the exact rational plane point is in the stability region."""
    nx, ny = _plane_names(p)
    return (
        p.membership({nx: x, ny: y}).result
        is MembershipResult.IN_STABILITY_REGION
    )


def _log_radii(n: int = 64, lo: int = -10, hi: int = 20) -> list[Fraction]:
    """n rational radii spread logarithmically over [2^lo, 2^hi]."""
    out = []
    for j in range(n):
        e = lo + (hi - lo) * j / (n - 1)
        out.append(Fraction(2.0**e).limit_denominator(10**9))
    return out


def _refined_bounds(value: AlgebraicNumber) -> tuple[Fraction, Fraction]:
    """Rational bounds with relative width <= 2^-40."""
    value.refine(Fraction(1, 2**20))
    iv = value.interval
    scale = max(abs(iv.lo), abs(iv.hi), Fraction(1, 2**20))
    value.refine(scale / 2**40)
    iv = value.interval
    return iv.lo, iv.hi


@dataclass
class Certificate:
    shape: str
    tested_value: str  # the exact rational shrunken parameter, as 'p/q'
    boundary_samples: int = 0
    interior_samples: int = 0
    all_in: bool = False
    rejection_parameter: str = ""
    rejection_witness: tuple[str, str] | None = None
    note: str = ""

    def to_dict(self) -> dict:
        return asdict(self)


def _fmt(q: Fraction) -> str:
    return f"{q.numerator}/{q.denominator}"


def _scan_for_rejection(
    p: ParamCharPoly, points: list[tuple[Fraction, Fraction]]
) -> tuple[str, str] | None:
    for x, y in points:
        if not member(p, x, y):
            return (_fmt(x), _fmt(y))
    return None


def _cluster(center: Fraction, n: int = 48) -> list[Fraction]:
    """Rational values clustered multiplicatively around center."""
    if center <= 0:
        return []
    out = []
    for j in range(1, n + 1):
        d = Fraction(j, n * 2**8)
        out.append(center * (1 + d))
        out.append(center * (1 - d))
    out.append(center)
    return out


# ---------------------------------------------------------------------------
# Sector  {x <= 0, |y| <= m |x|}
# ---------------------------------------------------------------------------


def verify_sector(
    p: ParamCharPoly,
    slope: AlgebraicNumber,
    witness_scale: float | None = None,
) -> tuple[bool, Certificate]:
    m_lo, m_hi = _refined_bounds(slope)
    cert = Certificate(shape="sector", tested_value=_fmt(m_lo))
    if m_lo <= 0:
        cert.note = "nonpositive slope"
        return False, cert
    radii = _log_radii()
    for r in radii:
        if not member(p, -r, m_lo * r):
            cert.note = f"boundary sample NotIn at radius {_fmt(r)}"
            return False, cert
        cert.boundary_samples += 1
    for j, r in enumerate(radii):
        ms = m_lo * (j % 8 + 1) / 9
        if not member(p, -r, ms * r):
            cert.note = f"interior sample NotIn at radius {_fmt(r)}"
            return False, cert
        cert.interior_samples += 1
    cert.all_in = True
    # maximality: inflated slope must exhibit a NotIn witness
    m_out = m_hi * (1 + Fraction(1, 2**10))
    cert.rejection_parameter = _fmt(m_out)
    candidates = _log_radii(128)
    if witness_scale:
        candidates += _cluster(Fraction(witness_scale).limit_denominator(10**9))
    w = _scan_for_rejection(p, [(-r, m_out * r) for r in candidates])
    if w is None:
        raise VerificationUndecided(
            "no rejection witness found for inflated sector"
        )
    cert.rejection_witness = w
    return True, cert


# ---------------------------------------------------------------------------
# Disk  |z + r| <= r
# ---------------------------------------------------------------------------


def _circle_point(r: Fraction, v: Fraction) -> tuple[Fraction, Fraction]:
    d = 1 + v * v
    return (-2 * r * v * v / d, 2 * r * v / d)


def verify_disk(
    p: ParamCharPoly,
    radius: AlgebraicNumber,
    witness_angle: float | None = None,
) -> tuple[bool, Certificate]:
    r_lo, r_hi = _refined_bounds(radius)
    cert = Certificate(shape="disk", tested_value=_fmt(r_lo))
    if r_lo <= 0:
        cert.note = "nonpositive radius"
        return False, cert
    vs = _log_radii()  # v = tan(phi/2) grid covers the upper semicircle
    for v in vs:
        x, y = _circle_point(r_lo, v)
        if not member(p, x, y):
            cert.note = f"boundary sample NotIn at v = {_fmt(v)}"
            return False, cert
        cert.boundary_samples += 1
    for j, v in enumerate(vs):
        x, y = _circle_point(r_lo * (j % 8 + 1) / 9, v)
        if not member(p, x, y):
            cert.note = f"interior sample NotIn at v = {_fmt(v)}"
            return False, cert
        cert.interior_samples += 1
    cert.all_in = True
    r_out = r_hi * (1 + Fraction(1, 2**10))
    cert.rejection_parameter = _fmt(r_out)
    candidates = _log_radii(128)
    if witness_angle is not None:
        import math

        v_star = math.tan(witness_angle / 2)
        if v_star > 0:
            candidates += _cluster(Fraction(v_star).limit_denominator(10**9))
    w = _scan_for_rejection(p, [_circle_point(r_out, v) for v in candidates])
    if w is None:
        raise VerificationUndecided("no rejection witness found for inflated disk")
    cert.rejection_witness = w
    return True, cert


# ---------------------------------------------------------------------------
# Parabola  {x <= 0, y^2 <= m |x|}
# ---------------------------------------------------------------------------


def verify_parabola(
    p: ParamCharPoly,
    m: AlgebraicNumber,
    witness_q: float | None = None,
) -> tuple[bool, Certificate]:
    m_lo, m_hi = _refined_bounds(m)
    cert = Certificate(shape="parabola", tested_value=_fmt(m_lo))
    if m_lo <= 0:
        cert.note = "nonpositive parabola parameter"
        return False, cert
    qs = _log_radii()
    for q in qs:
        # boundary point (x, y) = (-q^2/m, q): y^2 = q^2 = m * |x|
        if not member(p, -q * q / m_lo, q):
            cert.note = f"boundary sample NotIn at q = {_fmt(q)}"
            return False, cert
        cert.boundary_samples += 1
    for j, q in enumerate(qs):
        ms = m_lo * (j % 8 + 1) / 9
        if not member(p, -q * q / ms, q):
            cert.note = f"interior sample NotIn at q = {_fmt(q)}"
            return False, cert
        cert.interior_samples += 1
    cert.all_in = True
    m_out = m_hi * (1 + Fraction(1, 2**10))
    cert.rejection_parameter = _fmt(m_out)
    candidates = _log_radii(128)
    if witness_q:
        candidates += _cluster(Fraction(witness_q).limit_denominator(10**9))
    w = _scan_for_rejection(p, [(-q * q / m_out, q) for q in candidates])
    if w is None:
        raise VerificationUndecided(
            "no rejection witness found for inflated parabola"
        )
    cert.rejection_witness = w
    return True, cert


# ---------------------------------------------------------------------------
# Half-plane  Re z <= -D
# ---------------------------------------------------------------------------


def verify_halfplane(
    p: ParamCharPoly,
    D: AlgebraicNumber,
    witness_y: float | None = None,
) -> tuple[bool, Certificate]:
    d_lo, d_hi = _refined_bounds(D)
    cert = Certificate(shape="halfplane", tested_value=_fmt(d_hi))
    if d_lo <= 0:
        cert.note = "nonpositive abscissa"
        return False, cert
    # The shrunken shape is the deeper half-plane Re z <= -d_hi.
    ys = [Fraction(0)] + _log_radii(63)
    for y in ys:
        if not member(p, -d_hi, y):
            cert.note = f"boundary sample NotIn at y = {_fmt(y)}"
            return False, cert
        cert.boundary_samples += 1
    for j, y in enumerate(ys):
        if not member(p, -d_hi * 2 ** (j % 8 + 1), y):
            cert.note = f"interior sample NotIn at y = {_fmt(y)}"
            return False, cert
        cert.interior_samples += 1
    cert.all_in = True
    # minimality: the shallower half-plane must contain a NotIn witness
    d_in = d_lo * (1 - Fraction(1, 2**10))
    cert.rejection_parameter = _fmt(d_in)
    candidates = [Fraction(0)] + _log_radii(127)
    if witness_y:
        candidates += _cluster(Fraction(witness_y).limit_denominator(10**9))
    w = _scan_for_rejection(p, [(-d_in, y) for y in candidates])
    if w is None:
        raise VerificationUndecided(
            "no rejection witness found for deflated half-plane"
        )
    cert.rejection_witness = w
    return True, cert


# ---------------------------------------------------------------------------
# Imaginary-axis interval  {iy : |y| < b*}
# ---------------------------------------------------------------------------


def verify_imag_axis(
    p: ParamCharPoly, halfwidth: AlgebraicNumber
) -> tuple[bool, Certificate]:
    b_lo, b_hi = _refined_bounds(halfwidth)
    cert = Certificate(shape="imag_axis", tested_value=_fmt(b_lo))
    if b_lo <= 0:
        cert.note = "nonpositive halfwidth"
        return False, cert
    for j in range(1, 65):
        y = b_lo * j / 65
        if not member(p, Fraction(0), y):
            cert.note = f"axis sample NotIn at y = {_fmt(y)}"
            return False, cert
        cert.boundary_samples += 1
    cert.all_in = True
    b_out = b_hi * (1 + Fraction(1, 2**10))
    cert.rejection_parameter = _fmt(b_out)
    w = _scan_for_rejection(
        p, [(Fraction(0), b_out * (1 + Fraction(j, 2**10))) for j in range(32)]
    )
    if w is None:
        raise VerificationUndecided(
            "no rejection witness found above the candidate halfwidth"
        )
    cert.rejection_witness = w
    return True, cert
