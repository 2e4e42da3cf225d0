"""Shared fixtures-by-function for the test suite.

Expensive pipelines (curve building, tangency solves) are memoized so that
each runs at most once per pytest session no matter how many tests use it.
"""

from __future__ import annotations

import decimal
from fractions import Fraction
from functools import lru_cache

import sympy as sp

from stabreg import imex_opt
from stabreg.methods import ParamCharPoly, bdf, char_poly, enright, imex
from stabreg.rlc import (
    build_curve,
    imag_axis_interval,
    inscribed_parabola,
    stability_angle,
    stability_radius,
    stiff_abscissa,
)


@lru_cache(maxsize=None)
def method(family: str, k: int = 0, beta1=None, beta0=None) -> ParamCharPoly:
    if family == "bdf":
        return char_poly(bdf(k))
    if family == "enright":
        return char_poly(enright(k))
    if family == "imex":
        return imex(Fraction(beta1), Fraction(beta0))
    raise ValueError(family)


@lru_cache(maxsize=None)
def curve(family: str, k: int = 0, beta1=None, beta0=None):
    return build_curve(method(family, k, beta1, beta0))


@lru_cache(maxsize=None)
def angle(family: str, k: int = 0, beta1=None, beta0=None):
    return stability_angle(method(family, k, beta1, beta0))


@lru_cache(maxsize=None)
def radius(k: int):
    return stability_radius(method("bdf", k))


@lru_cache(maxsize=None)
def parabola(beta1, beta0):
    return inscribed_parabola(method("imex", 0, beta1, beta0))


@lru_cache(maxsize=None)
def abscissa(family: str, k: int):
    return stiff_abscissa(method(family, k))


@lru_cache(maxsize=None)
def imag_axis(k: int):
    return imag_axis_interval(method("bdf", k))


@lru_cache(maxsize=None)
def sector_scan_32():
    return imex_opt.sector_scan(32)


@lru_cache(maxsize=None)
def parabola_scan_8():
    return imex_opt.parabola_scan(8)


@lru_cache(maxsize=None)
def scheme_angle_report():
    return imex_opt.scheme_angles()


def within_ulp(approx: str, printed: str, ulps: int = 1) -> bool:
    """True when two decimal strings differ by at most `ulps` of the last
    printed digit of `printed`."""
    a = decimal.Decimal(approx)
    p = decimal.Decimal(printed)
    ulp = decimal.Decimal(1).scaleb(p.as_tuple().exponent)
    return abs(a - p) <= ulps * ulp


# Closed forms printed with the reference tables (sympy exact expressions).
TABLE1_TAN = {
    3: 329 * sp.sqrt(sp.Rational(7, 5)) / 27,
    4: 699 * sp.sqrt(sp.Rational(3, 2)) / 256,
    5: sp.Rational(1326107429, 25)
    * sp.sqrt(
        sp.Integer(62)
        / (53860574450525125 + 1194498034900685 * sp.sqrt(2033))
    ),
    6: sp.Integer(45503) / (10125 * sp.sqrt(195)),
}

TABLE1_DEGREES = {
    3: "86.032366860211647332",
    4: "73.351670474578482110",
    5: "51.839755836049910391",
    6: "17.839777792245700101",
}

TABLE2_C = {
    3: "27.056933440109472532101963",
    4: "7.1406622283653916403051061",
    5: "3.2907685080317853840110455",
    6: "1.7285146253131256601603521",
    7: "0.7703217281441388675578954",
}

TABLE2_DEGREES = {
    3: "87.8833627693413031369003498",
    4: "82.0279713768712835947479188",
    5: "73.0970020659749082763655203",
    7: "37.6078417405752150238159031",
}

TABLE3_APPROX = {
    3: "7.049703546891172",
    4: "2.727199466336645",
    5: "1.357947301777465",
    6: "0.559931687924882",
}

TABLE3_ROWS = {
    3: None,  # closed form (17 + 8*sqrt(10))/6 handled separately
    4: [18432, 2172, -100855, -114975],
    5: [
        2944512000,
        260854387200,
        679386763440,
        266052478296,
        -1280160594125,
        -1354065829875,
    ],
    6: [
        141717600000,
        558150393600,
        1112790780640,
        948530730784,
        -119637602525,
        -488414721375,
    ],
}

RADIUS_PREFACTOR_DEGREE = {3: 28, 4: 52, 5: 88, 6: 128}

TABLE3_CLOSED_FORM_K3 = (17 + 8 * sp.sqrt(10)) / 6

IMAG_HALFWIDTH = {
    5: sp.sqrt(12775 - 387 * sp.sqrt(1065)) / (12 * sp.sqrt(2)),
    6: sp.Rational(7, 20) * sp.sqrt(1263 - 336 * sp.sqrt(14)),
}

SCHEME_TAN = {
    "optimal": sp.Rational(1, 2),
    "shu": 1 / sp.sqrt(135 + 78 * sp.sqrt(3)),
    "sg": sp.sqrt((2 * sp.sqrt(3) - 3) / 3),
}

# Magnitudes of the degree-22 even defining polynomial of the 3-step Enright
# tangent, descending degree (the printed table drops the signs; all
# non-leading coefficients are negative).
ENRIGHT3_TAN_POLY_ABS = [
    6621625501626720011970719022734459520000000000000000,
    0,
    4744945665370497147850526235135397935643117766707200000,
    0,
    74537179754361052063480563770102869789636567887828480000,
    0,
    417809113212221868517393954677075422852686053100794277975,
    0,
    1103592881533264097533512931940128409045933472020943607320,
    0,
    1780216754145335084531442707748395556646595339402356863603,
    0,
    2028417751642933570985301304414377204911584843581604760752,
    0,
    1720629215811045658880293770988465046952673868659037700813,
    0,
    1065257770963658030926145190690110109450795207237154063632,
    0,
    451976742777053443392779380035051991794204051855298481913,
    0,
    117280744006618927204325767614876515512652225395198902600,
    0,
    14037302894263476230042573549418427869442188056651130000,
]
