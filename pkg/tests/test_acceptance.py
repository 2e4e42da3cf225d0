"""Acceptance suite: one test per criterion, each printing a PASS/FAIL line.

Heavy pipeline results are shared with the unit suites through the memoized
helpers module, so each pipeline runs at most once per session.
"""

import contextlib
from fractions import Fraction

import sympy as sp

import helpers
from stabreg import imex_opt
from stabreg.cli import _degrees_from_tangent
from stabreg.methods import MembershipResult
from stabreg.polycore import verify_algebraic_identity
from stabreg.rlc import angle_candidates_numeric, ray_rejection_witness


@contextlib.contextmanager
def report(capsys, num: int, desc: str):
    try:
        yield
    except BaseException:
        with capsys.disabled():
            print(f"acceptance {num:2d} [{desc}]: FAIL")
        raise
    else:
        with capsys.disabled():
            print(f"acceptance {num:2d} [{desc}]: PASS")


def test_criterion_1_bdf_angles(capsys):
    with report(capsys, 1, "BDF stability angles vs closed forms"):
        for k in (3, 4, 5, 6):
            res = helpers.angle("bdf", k)
            assert verify_algebraic_identity(res.value, helpers.TABLE1_TAN[k]), k
            got = _degrees_from_tangent(res.value, 20)
            assert helpers.within_ulp(got, helpers.TABLE1_DEGREES[k]), (k, got)


def test_criterion_2_bdf3_witness(capsys):
    with report(capsys, 2, "BDF3 tangency point exact"):
        res = helpers.angle("bdf", 3)
        a0, b0 = res.witness[0]
        assert a0.equals_rational(Fraction(-405, 5324))
        assert verify_algebraic_identity(b0, 987 * sp.sqrt(35) / 5324)


def test_criterion_3_bdf_radii(capsys):
    with report(capsys, 3, "BDF stability radii vs reference rows"):
        import decimal

        r = sp.Symbol("r")
        for k in (3, 4, 5, 6):
            res = helpers.radius(k)
            assert res.certificate["prefactor_degree_r"] \
                == helpers.RADIUS_PREFACTOR_DEGREE[k], k
            got = decimal.Decimal(res.value.approx(25)).quantize(
                decimal.Decimal("1.000000000000000")
            )
            assert str(got) == helpers.TABLE3_APPROX[k], (k, got)
            if k == 3:
                assert verify_algebraic_identity(
                    res.value, helpers.TABLE3_CLOSED_FORM_K3
                )
            else:
                row = sp.Poly(helpers.TABLE3_ROWS[k], r)
                mine = sp.Poly(list(res.value.defining_poly), r)
                assert sp.rem(row, mine).is_zero or sp.rem(mine, row).is_zero, k


def test_criterion_4_enright_angles(capsys):
    with report(capsys, 4, "Enright angles and double-tangent rejection"):
        # k = 3, 4 to 20 significant digits
        for k in (3, 4):
            res = helpers.angle("enright", k)
            assert helpers.within_ulp(helpers.TABLE2_C[k],
                                      res.value.approx(20)), k
            got = _degrees_from_tangent(res.value, 20)
            assert helpers.within_ulp(helpers.TABLE2_DEGREES[k], got), k
        # k = 3 tangent is a root of the printed degree-22 coefficient list:
        # magnitudes match exactly and the signed polynomial straddles zero on
        # the isolating interval refined to width 2^-512
        res3 = helpers.angle("enright", 3)
        dp = list(res3.value.defining_poly)
        assert [abs(c) for c in dp] == helpers.ENRIGHT3_TAN_POLY_ABS
        res3.value.refine(Fraction(1, 2**512))
        iv = res3.value.interval

        def _eval(x: Fraction) -> Fraction:
            acc = Fraction(0)
            for c in dp:
                acc = acc * x + c
            return acc

        assert _eval(iv.lo) * _eval(iv.hi) < 0
        # k = 5 to >= 12 digits (slow pipeline)
        res5 = helpers.angle("enright", 5)
        assert helpers.within_ulp(helpers.TABLE2_C[5], res5.value.approx(13))
        # k = 7: the spurious near-vertical tangent must be generated and
        # then rejected by exact ray sampling; the true tangent survives
        p7 = helpers.method("enright", 7)
        cands = angle_candidates_numeric(p7)
        spurious = [
            c for c in cands if 89.99985 < c["angle_degrees"] < 89.99999
        ]
        genuine = [
            c for c in cands if abs(c["angle_degrees"] - 37.6078417) < 1e-3
        ]
        assert spurious and genuine
        assert ray_rejection_witness(p7, Fraction(spurious[0]["slope"])) \
            is not None
        assert ray_rejection_witness(p7, Fraction(genuine[0]["slope"])) is None


def test_criterion_5_enright3_abscissa(capsys):
    with report(capsys, 5, "Enright-3 stiff abscissa"):
        res = helpers.abscissa("enright", 3)
        assert res.value.approx(14) == "0.10341810907195"
        dp = res.value.defining_poly
        assert len(dp) - 1 == 12
        assert sum(len(str(abs(c))) for c in dp) == 529


def test_criterion_6_bdf_imag_axis(capsys):
    with report(capsys, 6, "BDF imaginary-axis intervals"):
        assert helpers.imag_axis(3).kind == "empty"
        assert helpers.imag_axis(4).kind == "empty"
        for k in (5, 6):
            res = helpers.imag_axis(k)
            assert res.kind == "interval", k
            assert verify_algebraic_identity(
                res.shape.value, helpers.IMAG_HALFWIDTH[k]
            ), k


def test_criterion_7_bdf6_cusps(capsys):
    with report(capsys, 7, "BDF6 cusp points"):
        p = helpers.method("bdf", 6)
        zeta0 = (1 + sp.I * sp.sqrt(3)) / 2
        assert sp.simplify(sp.Abs(zeta0) - 1) == 0
        for sign in (1, -1):
            mu = {"a": sp.Rational(7, 120), "b": sign * 21 * sp.sqrt(3) / 40}
            assert p.membership(mu).result == MembershipResult.NOT_IN
            # certified double root of modulus 1 at zeta0 (conjugate for mu-)
            z0 = zeta0 if sign == 1 else sp.conjugate(zeta0)
            coeffs = p.coeffs_at_sympy(mu)
            z = sp.Symbol("z")
            phi = sum(c * z**l for l, c in enumerate(coeffs))
            assert sp.simplify(phi.subs(z, z0)) == 0
            assert sp.simplify(sp.diff(phi, z).subs(z, z0)) == 0
            assert sp.simplify(sp.diff(phi, z, 2).subs(z, z0)) != 0


def test_criterion_8_imex_sector(capsys):
    with report(capsys, 8, "IMEX sector optimum"):
        sb = imex_opt.sector_bound(Fraction(3, 8), Fraction(3, 4))
        assert sb.m_star.equals_rational(Fraction(1, 2))
        scan = helpers.sector_scan_32()
        assert scan["none_exceed_half"] is True
        assert scan["optimum"]["is_half"] is True
        rep = helpers.scheme_angle_report()
        for name in ("shu", "sg"):
            assert rep[name]["closed_form_verified"] is True


def test_criterion_9_imex_parabola(capsys):
    with report(capsys, 9, "IMEX parabola optimum"):
        scan = helpers.parabola_scan_8()
        opt = scan["optimum"]
        assert opt["is_six_fifths"] is True
        xi0, eta0 = opt["touch"][0]
        assert sp.simplify(sp.sympify(xi0) - sp.Rational(-10, 7)) == 0
        assert sp.simplify(sp.sympify(eta0) - 2 * sp.sqrt(sp.Rational(3, 7))) == 0
        # discriminant factor at (3/8, 3/4)
        delta, _ = imex_opt.parabola_discriminant(Fraction(3, 8), Fraction(3, 4))
        m = sp.Symbol("m", real=True)
        cubic = 36 * m**3 + 1362 * m**2 + 343 * m - 2116
        assert sp.rem(sp.Poly(delta, m), sp.Poly(cubic, m)).is_zero
        res = helpers.parabola(Fraction(3, 8), Fraction(3, 4))
        assert res.value.approx(6).startswith("1.11226")
        # uniqueness on the 64 x 64 grid plus the exact optimum point
        hits = imex_opt.uniqueness_probe(grid=64)
        assert hits == [(Fraction(1, 5), Fraction(37, 40))]
        for eps in (Fraction(1, 4), Fraction(1, 2), Fraction(3, 4)):
            assert imex_opt.eps_perturbation_reject(eps)


def test_criterion_10_region_identities(capsys):
    with report(capsys, 10, "IMEX region identities"):
        xi = sp.Symbol("xi", real=True)
        eta = sp.Symbol("eta", real=True)
        F_opt = (
            12 * eta**4 * (3 * xi + 2) ** 2
            - 3 * eta**2 * xi * (9 * xi**3 + 192 * xi**2 - 620 * xi + 368)
            + 16 * xi * (3 * xi**2 - 7 * xi + 6) ** 2
        )
        F_tilde = (
            720 * eta**4 * (11 * xi + 5) ** 2
            - eta**2
            * xi
            * (19575 * xi**3 + 485696 * xi**2 - 1009140 * xi + 464400)
            + 240 * xi * (22 * xi**2 - 49 * xi + 30) ** 2
        )
        F1 = helpers.curve("imex", 0, Fraction(3, 8), Fraction(3, 4)).F_sympy()
        F2 = helpers.curve("imex", 0, Fraction(1, 5), Fraction(37, 40)).F_sympy()
        assert sp.expand(16 * F1 - 3 * F_opt) == 0
        assert sp.expand(2000 * F2 - F_tilde) == 0


def test_criterion_11_property_suite(capsys):
    with report(capsys, 11, "randomized property suite"):
        import test_properties
        from test_schur_cohn import oracle_agreement

        oracle_agreement(10_000, seed=20240819)
        for k in range(1, 7):
            test_properties.test_on_curve_exactness_1000(k)
        test_properties.test_evenness_of_every_built_curve()
        test_properties.test_weierstrass_points_on_unit_circle()
