"""Property suite: randomized and structural invariants with no table numerics."""

import json
import random
from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

import helpers
from stabreg.polycore import Interval, MultiPoly, eval_interval
from stabreg.rlc import sample_curve
from test_schur_cohn import oracle_agreement


def test_schur_cohn_oracle_10000():
    """classify agrees with a 256-bit companion-matrix root oracle."""
    oracle_agreement(10_000, seed=20240819)


@pytest.mark.parametrize("k", range(1, 7))
def test_on_curve_exactness_1000(k):
    """Sampled LMM curve points satisfy F(a, b) = 0 exactly."""
    p = helpers.method("bdf", k)
    F = helpers.curve("bdf", k).F
    rep = sample_curve(p, 1000)
    checked = 0
    for s in rep.samples:
        if s.branch < 0:
            continue
        assert F.eval({"a": Fraction(s.re), "b": Fraction(s.im)}).is_zero
        checked += 1
    assert checked >= 1000


def test_weierstrass_points_on_unit_circle():
    rng = random.Random(5)
    for _ in range(1000):
        t = Fraction(rng.randint(-10**6, 10**6), rng.randint(1, 10**6))
        a = (1 - t * t) / (1 + t * t)
        b = 2 * t / (1 + t * t)
        assert a * a + b * b - 1 == 0


def test_evenness_of_every_built_curve():
    import sympy as sp

    curves = [helpers.curve("bdf", k) for k in range(1, 7)]
    curves.append(helpers.curve("enright", 3))
    curves.append(helpers.curve("imex", 0, Fraction(3, 8), Fraction(3, 4)))
    curves.append(helpers.curve("imex", 0, Fraction(1, 5), Fraction(37, 40)))
    for c in curves:
        y = sp.Symbol(c.plane[1], real=True)
        F = c.F_sympy()
        assert sp.expand(F - F.subs(y, -y)) == 0


@given(
    st.lists(st.integers(min_value=-50, max_value=50), min_size=1, max_size=7),
    st.fractions(min_value=-4, max_value=4),
    st.fractions(min_value=0, max_value=1),
    st.fractions(min_value=0, max_value=1),
    st.fractions(min_value=0, max_value=2),
)
@settings(max_examples=200, deadline=None)
def test_eval_interval_inclusion_monotone(coeffs, center, w_inner, pad_lo, pad_hi):
    p = MultiPoly.univariate("x", coeffs)
    inner = Interval.of(center - w_inner, center + w_inner)
    outer = Interval.of(inner.lo - pad_lo, inner.hi + pad_hi)
    vi = eval_interval(p, {"x": inner})
    vo = eval_interval(p, {"x": outer})
    assert vo.lo <= vi.lo and vi.hi <= vo.hi


@given(
    st.lists(st.integers(min_value=-9, max_value=9), min_size=2, max_size=6),
    st.fractions(min_value=-2, max_value=2),
)
@settings(max_examples=200, deadline=None)
def test_eval_interval_encloses_exact_value(coeffs, x):
    p = MultiPoly.univariate("x", coeffs)
    exact = p.eval({"x": Fraction(x)}).re
    boxed = eval_interval(
        p, {"x": Interval.of(Fraction(x) - Fraction(1, 64), Fraction(x) + Fraction(1, 64))}
    )
    assert boxed.lo <= exact <= boxed.hi


class TestCliDeterminism:
    def _run(self, capsys, *argv):
        from stabreg.cli import main

        main(list(argv))
        return capsys.readouterr().out

    def test_member_json(self, capsys):
        args = ("member", "--family", "bdf", "--steps", "2", "--mu", "3/2/0",
                "--json")
        assert self._run(capsys, *args) == self._run(capsys, *args)

    def test_scan_json(self, capsys):
        args = ("imex-scan", "--mode", "sector", "--grid", "8")
        out1 = self._run(capsys, *args)
        out2 = self._run(capsys, *args)
        assert out1 == out2
        json.loads(out1)  # well-formed

    def test_rlc_csv(self, capsys):
        args = ("rlc", "--family", "bdf", "--steps", "3", "--samples", "64")
        assert self._run(capsys, *args) == self._run(capsys, *args)
