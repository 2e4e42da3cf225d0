"""Unit tests for the tangency solvers and their verification certificates."""

import math
from fractions import Fraction

import pytest
import sympy as sp

import helpers
from stabreg.polycore import verify_algebraic_identity
from stabreg.rlc import angle_candidates_numeric


class TestStabilityAngleBDF3:
    def test_closed_form(self):
        res = helpers.angle("bdf", 3)
        assert verify_algebraic_identity(
            res.value, 329 * sp.sqrt(sp.Rational(7, 5)) / 27
        )

    def test_witness_pair(self):
        res = helpers.angle("bdf", 3)
        assert res.witness, "expected a tangency witness"
        a0, b0 = res.witness[0]
        assert a0.equals_rational(Fraction(-405, 5324))
        assert verify_algebraic_identity(b0, 987 * sp.sqrt(35) / 5324)

    def test_value_positive(self):
        assert helpers.angle("bdf", 3).value.sign() > 0

    def test_certificate(self):
        cert = helpers.angle("bdf", 3).certificate["verification"]
        assert cert["boundary_samples"] >= 64
        assert cert["interior_samples"] >= 64
        assert cert["all_in"] is True
        assert cert["rejection_witness"] is not None


class TestAngleMonotonicity:
    def test_bdf_tangent_decreases(self):
        tans = [helpers.angle("bdf", k).value for k in (3, 4, 5, 6)]
        for hi, lo in zip(tans, tans[1:]):
            assert lo < hi


class TestNumericCandidatesOracle:
    def test_bdf3_candidate_matches_exact_angle(self):
        cands = angle_candidates_numeric(helpers.method("bdf", 3), n=4096)
        exact_deg = math.degrees(math.atan(float(helpers.angle("bdf", 3).value)))
        assert any(abs(c["angle_degrees"] - exact_deg) < 1e-2 for c in cands)


class TestStabilityRadiusBDF3:
    def test_closed_form(self):
        res = helpers.radius(3)
        assert verify_algebraic_identity(res.value, (17 + 8 * sp.sqrt(10)) / 6)

    def test_prefactor_degree(self):
        assert helpers.radius(3).certificate["prefactor_degree_r"] == 28

    def test_unique_positive_root(self):
        assert helpers.radius(3).certificate.get("positive_roots", 1) == 1

    def test_disk_certificate(self):
        cert = helpers.radius(3).certificate["verification"]
        assert cert["all_in"] and cert["rejection_witness"] is not None


class TestInscribedParabola:
    def test_optimal_scheme_cubic(self):
        res = helpers.parabola(Fraction(3, 8), Fraction(3, 4))
        m = sp.Symbol("m")
        cubic = sp.Poly(36 * m**3 + 1362 * m**2 + 343 * m - 2116, m)
        mine = sp.Poly(list(res.value.defining_poly), m)
        assert sp.rem(mine, cubic) == sp.Poly(0, m) or mine == cubic
        assert res.value.approx(6).startswith("1.11226")

    def test_tilde_scheme_exact(self):
        res = helpers.parabola(Fraction(1, 5), Fraction(37, 40))
        assert res.value.equals_rational(Fraction(6, 5))

    def test_tilde_touch_point(self):
        res = helpers.parabola(Fraction(1, 5), Fraction(37, 40))
        assert res.witness
        xi0, eta0 = res.witness[0]
        assert sp.simplify(sp.sympify(xi0) - sp.Rational(-10, 7)) == 0
        assert sp.simplify(sp.sympify(eta0) - 2 * sp.sqrt(sp.Rational(3, 7))) == 0


class TestStiffAbscissa:
    def test_enright3(self):
        res = helpers.abscissa("enright", 3)
        assert res.value.approx(14) == "0.10341810907195"
        assert len(res.value.defining_poly) - 1 == 12

    def test_bdf3_positive(self):
        res = helpers.abscissa("bdf", 3)
        assert res.value.sign() > 0
        # cross-check against a dense sign rasterization of the region:
        # every half-plane sample Re z <= -(D + margin) must be in S
        p = helpers.method("bdf", 3)
        res.value.refine(Fraction(1, 2**30))
        d_hi = res.value.interval.hi
        for im in range(-6, 7):
            for off in (Fraction(1, 100), 1, 10):
                v = p.membership_mu(-(d_hi + off), Fraction(im, 2))
                assert v.result.name == "IN_STABILITY_REGION"


class TestImagAxis:
    def test_bdf3_empty(self):
        assert helpers.imag_axis(3).kind == "empty"

    def test_bdf5_interval(self):
        res = helpers.imag_axis(5)
        assert res.kind == "interval"
        assert verify_algebraic_identity(
            res.shape.value,
            sp.sqrt(12775 - 387 * sp.sqrt(1065)) / (12 * sp.sqrt(2)),
        )

    def test_bdf1_unbounded(self):
        # the implicit-euler region contains the whole punctured imaginary axis
        assert helpers.imag_axis(1).kind == "unbounded"


class TestShapeResultSerialization:
    def test_json_dict_schema(self):
        d = helpers.angle("bdf", 3).to_json_dict(20)
        assert set(d) >= {
            "quantity",
            "defining_poly",
            "interval",
            "approx",
            "digits",
            "witness",
            "certificate",
        }
        assert d["quantity"] == "angle_tangent"
        assert all(isinstance(c, int) for c in d["defining_poly"])
        assert d["digits"] == 20
