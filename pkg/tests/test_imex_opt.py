"""Unit tests for the two-parameter family optimizers."""

import random
from fractions import Fraction

import pytest
import sympy as sp

import helpers
from stabreg import imex_opt
from stabreg.errors import OnLeftEdge
from stabreg.polycore import verify_algebraic_identity
from stabreg.schur_cohn import UnitDiskClass, classify


class TestWedge:
    def test_optimal_point(self):
        w = imex_opt.wedge_test(Fraction(3, 8), Fraction(3, 4))
        assert w.in_wedge and not w.on_left_edge

    def test_vertex(self):
        w = imex_opt.wedge_test(Fraction(3, 4), Fraction(3, 8))
        assert w.in_wedge and w.on_left_edge

    def test_outside(self):
        assert not imex_opt.wedge_test(1, 1).in_wedge

    def test_left_edge(self):
        # 4 b0 + 2 b1 - 3 = 0 with b1 <= 3/4
        w = imex_opt.wedge_test(Fraction(1, 2), Fraction(1, 2))
        assert w.in_wedge and w.on_left_edge


class TestLimitPolynomials:
    def test_mlhs_classification_brackets_m_star(self):
        b1, b0 = Fraction(3, 8), Fraction(3, 4)
        _, mlhs_hi = imex_opt.limit_polynomials(b1, b0, Fraction(3, 5))
        assert not classify(mlhs_hi).in_vn  # beyond m* = 1/2
        _, mlhs_lo = imex_opt.limit_polynomials(b1, b0, Fraction(2, 5))
        assert classify(mlhs_lo).in_vn

    def test_lhs_degenerates_at_beta0_zero(self):
        lhs, _ = imex_opt.limit_polynomials(Fraction(1, 2), Fraction(0), 0)
        # leading cubic coefficient is beta0 = 0
        assert lhs[-1].is_zero


class TestSectorBound:
    def test_optimal(self):
        sb = imex_opt.sector_bound(Fraction(3, 8), Fraction(3, 4))
        assert sb.m_star.equals_rational(Fraction(1, 2))
        # Q(m) = -(81/16) m^4 + (81/64) m^2
        m = sp.Symbol("m")
        q = sum(
            sp.Rational(c) * m**i
            for i, c in enumerate(reversed(sb.Q))
        )
        assert sp.expand(
            q - (-sp.Rational(81, 16) * m**4 + sp.Rational(81, 64) * m**2)
        ) == 0

    def test_on_left_edge_raises(self):
        with pytest.raises(OnLeftEdge):
            imex_opt.sector_bound(Fraction(1, 2), Fraction(1, 2))

    def test_outside_wedge_raises(self):
        with pytest.raises(ValueError):
            imex_opt.sector_bound(1, 1)

    def test_c0_vanishes_only_at_optimum(self):
        # C0 = -3 (4b0 + 2b1 - 3)^2 (8b0 + 8b1 - 9) vanishes on W \ L only
        # where 8 b0 + 8 b1 = 9
        c4, c2, c0 = imex_opt.sector_coefficients(
            Fraction(3, 8), Fraction(3, 4)
        )
        assert c0 == 0 and c4 < 0

    def test_q_even(self):
        q = imex_opt.q_symbolic()
        m = sp.Symbol("m", real=True)
        assert sp.expand(q - q.subs(m, -m)) == 0


class TestShiftedCoefficients:
    def test_optimal_point(self):
        c = imex_opt.shifted_coefficients(Fraction(3, 8), Fraction(3, 4))
        assert c == (
            Fraction(0),
            Fraction(-81, 64),
            Fraction(-405, 64),
            Fraction(-81, 8),
            Fraction(-81, 16),
        )

    def test_interior_point_all_negative(self):
        # (3/8, 5/8) lies in the wedge interior off the left edge
        c = imex_opt.shifted_coefficients(Fraction(3, 8), Fraction(5, 8))
        assert all(cj < 0 for cj in c)

    def test_printed_display_carries_factor_16(self):
        b1, b0 = sp.symbols("beta1 beta0", real=True)
        printed = (
            6912 * b0**4
            + 768 * (18 * b1 - 35) * b0**3
            + 48 * (192 * b1**2 - 880 * b1 + 813) * b0**2
            + 40 * (64 * b1**3 - 528 * b1**2 + 1062 * b1 - 621) * b0
            + (3 - 2 * b1) ** 2 * (64 * b1**2 - 672 * b1 + 639)
        )
        c0 = imex_opt.shifted_c0_symbolic()
        assert sp.expand(printed - 16 * c0) == 0

    def test_sign_certificates_random(self):
        rng = random.Random(20240818)
        checked = 0
        while checked < 1000:
            b1 = Fraction(rng.randint(-300, 74), 100)
            lo = (3 - 2 * b1) / 4
            hi = (9 - 8 * b1) / 8
            t = Fraction(rng.randint(1, 99), 100)
            b0 = lo + (hi - lo) * t
            if 4 * b0 + 2 * b1 - 3 == 0:
                continue  # on L
            c4, c2, c0 = imex_opt.sector_coefficients(b1, b0)
            assert c4 < 0 and c0 >= 0
            ch = imex_opt.shifted_coefficients(b1, b0)
            assert all(cj < 0 for cj in ch[1:])
            assert ch[0] <= 0
            checked += 1


class TestSectorScan:
    def test_small_grid(self):
        rep = imex_opt.sector_scan(8)
        assert rep["none_exceed_half"] is True
        assert rep["optimum"]["is_half"] is True

    def test_all_nonnegative(self):
        rep = imex_opt.sector_scan(8)
        assert all(pt["m_star"] >= 0 for pt in rep["entries"])


class TestSchemeAngles:
    def test_closed_forms(self):
        rep = helpers.scheme_angle_report()
        for name in ("shu", "sg", "optimal"):
            assert rep[name]["closed_form_verified"] is True
        assert rep["optimal"]["tangent"].equals_rational(Fraction(1, 2))
        assert abs(rep["shu"]["angle_degrees"] - 3.4819718) < 1e-6
        assert abs(rep["sg"]["angle_degrees"] - 21.4707014) < 1e-6

    def test_consistency_with_sector_bound(self):
        # the RLC tangent and the Schur-Cohn limit bound agree per scheme
        for name, closed in helpers.SCHEME_TAN.items():
            b1, b0 = imex_opt.SCHEMES[name]
            sb = imex_opt.sector_bound(b1, b0)
            assert verify_algebraic_identity(sb.m_star, closed)
            assert verify_algebraic_identity(
                helpers.scheme_angle_report()[name]["tangent"], closed
            )


class TestParabola:
    def test_discriminant_factor_at_optimal(self):
        delta, _ = imex_opt.parabola_discriminant(
            Fraction(3, 8), Fraction(3, 4)
        )
        m = sp.Symbol("m", real=True)
        cubic = 36 * m**3 + 1362 * m**2 + 343 * m - 2116
        assert sp.rem(sp.Poly(delta, m), sp.Poly(cubic, m)).is_zero

    def test_wedge_factor_positive(self):
        # 9 b0 + 4 b1 - 6 > 0 across the wedge scan window
        for b1, b0 in imex_opt._wedge_grid(8):
            assert 9 * b0 + 4 * b1 - 6 > 0

    def test_touch_point_passes(self):
        assert imex_opt.touch_point_passes(Fraction(1, 5), Fraction(37, 40))
        assert not imex_opt.touch_point_passes(Fraction(3, 8), Fraction(3, 4))

    def test_uniqueness_probe_small(self):
        hits = imex_opt.uniqueness_probe(grid=16)
        assert hits == [(Fraction(1, 5), Fraction(37, 40))]

    def test_eps_rejection(self):
        for eps in (Fraction(1, 4), Fraction(1, 2), Fraction(3, 4)):
            assert imex_opt.eps_perturbation_reject(eps)
            assert imex_opt.eps_inequality_value(eps) > 0

    def test_negative_real_axis_widely_stable(self):
        hits = imex_opt.uniqueness_probe(sp.Integer(-1), sp.Integer(0), grid=8)
        assert len(hits) > 1
