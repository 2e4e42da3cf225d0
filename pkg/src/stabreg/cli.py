"""Command-line front end.

Subcommands expose the shape solvers (angle, radius, parabola, abscissa,
imag-axis), the Schur-Cohn classifier, exact membership, curve sampling,
the IMEX family scans, and the three summary tables.  Output is plain text
by default and a deterministic JSON report with --json; curve samplings are
emitted as CSV and can optionally be rendered to an image file.

Exit codes: 0 success, 2 usage error, 3 no/failed candidates, 4 undecided.
"""

from __future__ import annotations

import argparse
import decimal
import json
import sys
import time
from fractions import Fraction

import mpmath

from . import __version__
from .errors import (
    AllCandidatesRejected,
    NoCandidates,
    StabregError,
    UndecidedAtPrecisionCap,
    VerificationUndecided,
)
from .methods import MembershipResult, ParamCharPoly, bdf, char_poly, enright, imex
from .polycore.algebraic import AlgebraicNumber
from .polycore.gaussian import GaussianRational
from .rlc import (
    ImagAxisResult,
    ShapeResult,
    imag_axis_interval,
    inscribed_parabola,
    sample_curve,
    stability_angle,
    stability_radius,
    stiff_abscissa,
)
from .schur_cohn import classify

EXIT_OK = 0
EXIT_USAGE = 2
EXIT_NO_CANDIDATES = 3
EXIT_UNDECIDED = 4


def _fmt_fraction(q: Fraction) -> str:
    return f"{q.numerator}/{q.denominator}"


def _parse_rational(text: str) -> Fraction:
    try:
        return Fraction(text)
    except (ValueError, ZeroDivisionError) as exc:
        raise argparse.ArgumentTypeError(f"not a rational: {text!r}") from exc


def _parse_mu(text: str) -> GaussianRational:
    """Parse 're/im' where re and im are themselves 'p' or 'p/q' rationals."""
    parts = text.split("/")
    splits = {
        2: (1,),  # re/im
        3: (2,),  # p/q/im
        4: (2,),  # p/q/r/s
    }.get(len(parts), (1,))
    if len(parts) == 1:
        return GaussianRational.of(Fraction(parts[0]))
    for cut in splits:
        try:
            re = Fraction("/".join(parts[:cut]))
            im = Fraction("/".join(parts[cut:]))
            return GaussianRational(re, im)
        except (ValueError, ZeroDivisionError):
            continue
    raise argparse.ArgumentTypeError(f"cannot parse complex rational: {text!r}")


def _method(args) -> ParamCharPoly:
    if args.family == "bdf":
        if args.steps is None:
            raise _usage("--steps is required for the bdf family")
        return char_poly(bdf(args.steps))
    if args.family == "enright":
        if args.steps is None:
            raise _usage("--steps is required for the enright family")
        return char_poly(enright(args.steps))
    if args.family == "imex":
        if args.beta1 is None or args.beta0 is None:
            raise _usage("--beta1 and --beta0 are required for the imex family")
        return imex(args.beta1, args.beta0)
    raise _usage(f"unknown family {args.family!r}")


class _UsageError(Exception):
    pass


def _usage(msg: str) -> _UsageError:
    return _UsageError(msg)


def _degrees_from_tangent(value: AlgebraicNumber, digits: int) -> str:
    """Angle in degrees, arctan of the algebraic tangent, to `digits`
    significant digits."""
    value.refine(Fraction(1, 10 ** (digits + 10)))
    with mpmath.workdps(digits + 15):
        mid = value.interval.mid
        x = mpmath.mpf(mid.numerator) / mpmath.mpf(mid.denominator)
        deg = mpmath.atan(x) * 180 / mpmath.pi
        return mpmath.nstr(deg, digits, strip_zeros=False)


def _report(command: str, inputs: dict, results: list, elapsed_ms: int) -> dict:
    return {
        "tool": "stabreg",
        "version": __version__,
        "command": command,
        "inputs": inputs,
        "results": results,
        "precision_bits": 0,
        "elapsed_ms": elapsed_ms,
    }


def _emit_json(report: dict, stream) -> None:
    json.dump(report, stream, indent=2, sort_keys=True, default=str)
    stream.write("\n")


def _shape_inputs(args) -> dict:
    inputs = {"family": args.family, "digits": args.digits}
    if args.steps is not None:
        inputs["steps"] = args.steps
    if getattr(args, "beta1", None) is not None:
        inputs["beta1"] = _fmt_fraction(args.beta1)
        inputs["beta0"] = _fmt_fraction(args.beta0)
    return inputs


def _run_shape(args, command: str) -> int:
    if (
        args.family == "enright"
        and args.steps is not None
        and args.steps > 5
        and not args.allow_slow
    ):
        print(
            "enright steps > 5 involve eliminations of degree several hundred; "
            "pass --allow-slow to proceed",
            file=sys.stderr,
        )
        return EXIT_USAGE
    p = _method(args)
    t0 = time.monotonic()
    solver = {
        "angle": stability_angle,
        "radius": stability_radius,
        "parabola": inscribed_parabola,
        "abscissa": stiff_abscissa,
        "imag-axis": imag_axis_interval,
    }[command]
    result = solver(p)
    elapsed = int((time.monotonic() - t0) * 1000) if args.timing else 0

    if command == "imag-axis":
        return _emit_imag_axis(args, result, elapsed)

    payload = result.to_json_dict(args.digits)
    if args.json:
        _emit_json(_report(command, _shape_inputs(args), [payload], elapsed), sys.stdout)
        return EXIT_OK
    print(f"{result.quantity} = {result.value.approx(args.digits)}")
    if command == "angle":
        print(f"angle = {_degrees_from_tangent(result.value, args.digits)} degrees")
    print(f"defining polynomial (descending): {list(result.value.defining_poly)}")
    for x, y in result.witness:
        print(f"tangency witness: ({_witness_str(x)}, {_witness_str(y)})")
    return EXIT_OK


def _witness_str(v) -> str:
    if isinstance(v, AlgebraicNumber):
        if v.is_rational:
            return _fmt_fraction(v.as_rational())
        return v.approx(15)
    if isinstance(v, Fraction):
        return _fmt_fraction(v)
    return str(v)


def _emit_imag_axis(args, result: ImagAxisResult, elapsed: int) -> int:
    if args.json:
        if result.kind == "interval":
            payload = [result.shape.to_json_dict(args.digits)]
        else:
            payload = [{"quantity": "imag_axis_halfwidth", "kind": result.kind}]
        report = _report("imag-axis", _shape_inputs(args), payload, elapsed)
        report["kind"] = result.kind
        _emit_json(report, sys.stdout)
        return EXIT_OK
    if result.kind == "interval":
        print(f"imag_axis_halfwidth = {result.shape.value.approx(args.digits)}")
        print(
            "defining polynomial (descending): "
            f"{list(result.shape.value.defining_poly)}"
        )
    else:
        print(f"imaginary-axis interval: {result.kind}")
    return EXIT_OK


def _parse_coeff(entry) -> GaussianRational:
    if isinstance(entry, (list, tuple)) and len(entry) == 2:
        return GaussianRational(Fraction(str(entry[0])), Fraction(str(entry[1])))
    if isinstance(entry, (int, str)):
        return GaussianRational.of(Fraction(str(entry)))
    if isinstance(entry, float):
        raise _usage("coefficients must be exact rationals, not floats")
    raise _usage(f"cannot parse coefficient {entry!r}")


def _run_classify(args) -> int:
    try:
        raw = json.loads(args.coeffs)
    except json.JSONDecodeError as exc:
        print(f"invalid JSON coefficient list: {exc}", file=sys.stderr)
        return EXIT_USAGE
    if not isinstance(raw, list) or not raw:
        print("expected a non-empty JSON list of coefficients", file=sys.stderr)
        return EXIT_USAGE
    coeffs = [_parse_coeff(c) for c in raw]
    cls = classify(coeffs)
    if args.json:
        _emit_json(
            _report("classify", {"coeffs": raw}, [{"class": cls.name}], 0), sys.stdout
        )
    else:
        print(cls.name)
    return EXIT_OK


def _run_member(args) -> int:
    p = _method(args)
    if args.family == "imex":
        if args.xi is None or args.eta is None:
            raise _usage("--xi and --eta are required for imex membership")
        point = {"xi": args.xi, "eta": args.eta}
        inputs = {"xi": _fmt_fraction(args.xi), "eta": _fmt_fraction(args.eta)}
    else:
        if args.mu is None:
            raise _usage("--mu is required for lmm/sd membership")
        verdict = p.membership_mu(args.mu.re, args.mu.im)
        inputs = {"mu": str(args.mu)}
        return _emit_member(args, inputs, verdict)
    verdict = p.membership(point)
    return _emit_member(args, inputs, verdict)


def _emit_member(args, inputs: dict, verdict) -> int:
    names = {
        MembershipResult.IN_STABILITY_REGION: "InStabilityRegion",
        MembershipResult.NOT_IN: "NotIn",
        MembershipResult.EXCLUDED: "Excluded",
        MembershipResult.UNDECIDED: "Undecided",
    }
    label = names[verdict.result]
    if args.json:
        payload = {"membership": label}
        if verdict.unit_disk_class is not None:
            payload["unit_disk_class"] = str(verdict.unit_disk_class)
        inputs.update(_shape_inputs_min(args))
        _emit_json(_report("member", inputs, [payload], 0), sys.stdout)
    else:
        print(label)
    return EXIT_UNDECIDED if verdict.result is MembershipResult.UNDECIDED else EXIT_OK


def _shape_inputs_min(args) -> dict:
    inputs = {"family": args.family}
    if args.steps is not None:
        inputs["steps"] = args.steps
    if getattr(args, "beta1", None) is not None:
        inputs["beta1"] = _fmt_fraction(args.beta1)
        inputs["beta0"] = _fmt_fraction(args.beta0)
    return inputs


def _run_rlc(args) -> int:
    p = _method(args)
    report = sample_curve(p, args.samples)
    lines = ["branch,t,re,im"]
    for s in report.samples:
        lines.append(
            f"{s.branch},{_csv_num(s.t)},{_csv_num(s.re)},{_csv_num(s.im)}"
        )
    text = "\n".join(lines) + "\n"
    if args.out == "-":
        sys.stdout.write(text)
    else:
        with open(args.out, "w") as fh:
            fh.write(text)
    if args.plot:
        from .plotting import plot_samples

        plot_samples(report, args.plot, title=p.name)
    return EXIT_OK


def _csv_num(v) -> str:
    if isinstance(v, Fraction):
        return repr(float(v))
    return repr(float(v))


def _run_imex_scan(args) -> int:
    from . import imex_opt

    if args.mode == "sector":
        scan = imex_opt.sector_scan(args.grid)
        value_key = "m_star"
    else:
        scan = imex_opt.parabola_scan(args.grid)
        value_key = "m" if "m" in scan["optimum"] else "m_parabola"
    entries = [
        {
            "beta1": _fmt_fraction(e["beta1"]),
            "beta0": _fmt_fraction(e["beta0"]),
            value_key: round(e.get("m_star", e.get("m_parabola", 0.0)), 12),
        }
        for e in scan["entries"]
    ]
    opt = scan["optimum"]
    opt_payload = {
        "beta1": _fmt_fraction(opt["beta1"]),
        "beta0": _fmt_fraction(opt["beta0"]),
    }
    if args.mode == "sector":
        opt_payload["m_star"] = opt["m_star"].approx(20)
        opt_payload["is_half"] = opt["is_half"]
    else:
        opt_payload["m"] = opt["m"].approx(20)
        opt_payload["is_six_fifths"] = opt["is_six_fifths"]
    report = _report(
        "imex-scan",
        {"mode": args.mode, "grid": args.grid},
        entries,
        0,
    )
    report["optimum"] = opt_payload
    if args.mode == "sector":
        report["none_exceed_half"] = scan["none_exceed_half"]
    _emit_json(report, sys.stdout)
    return EXIT_OK


def _run_tables(args) -> int:
    if args.which == 1:
        print("k | tan(alpha) | alpha (degrees)")
        for k in range(3, 7):
            res = stability_angle(char_poly(bdf(k)))
            print(
                f"{k} | {res.value.approx(20)} | "
                f"{_degrees_from_tangent(res.value, 20)}"
            )
        return EXIT_OK
    if args.which == 2:
        ks = [3, 4] + ([5] if args.allow_slow else [])
        print("k | c_k | alpha (degrees)")
        for k in ks:
            res = stability_angle(char_poly(enright(k)))
            print(
                f"{k} | {res.value.approx(20)} | "
                f"{_degrees_from_tangent(res.value, 20)}"
            )
        if not args.allow_slow:
            print(
                "(rows k >= 5 need --allow-slow; k = 6, 7 exceed desk scale)",
                file=sys.stderr,
            )
        return EXIT_OK
    if args.which == 3:
        print("k | r_k")
        for k in range(3, 7):
            res = stability_radius(char_poly(bdf(k)))
            r = decimal.Decimal(res.value.approx(25))
            print(f"{k} | {r.quantize(decimal.Decimal('1.000000000000000'))}")
        return EXIT_OK
    raise _usage("--which must be 1, 2, or 3")


def _add_method_args(sp) -> None:
    sp.add_argument("--family", required=True, choices=["bdf", "enright", "imex"])
    sp.add_argument("--steps", type=int)
    sp.add_argument("--beta1", type=_parse_rational)
    sp.add_argument("--beta0", type=_parse_rational)


def _add_shape_args(sp) -> None:
    _add_method_args(sp)
    sp.add_argument("--digits", type=int, default=20)
    sp.add_argument("--json", action="store_true")
    sp.add_argument("--timing", action="store_true")
    sp.add_argument("--allow-slow", action="store_true")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="stabreg",
        description="Exact geometry of multistep-method stability regions.",
    )
    parser.add_argument("--version", action="version", version=__version__)
    sub = parser.add_subparsers(dest="command", required=True)

    for name in ("angle", "radius", "parabola", "abscissa", "imag-axis"):
        sp = sub.add_parser(name)
        _add_shape_args(sp)

    sp = sub.add_parser("classify")
    sp.add_argument("--coeffs", required=True)
    sp.add_argument("--json", action="store_true")

    sp = sub.add_parser("member")
    _add_method_args(sp)
    sp.add_argument("--mu", type=_parse_mu)
    sp.add_argument("--xi", type=_parse_rational)
    sp.add_argument("--eta", type=_parse_rational)
    sp.add_argument("--json", action="store_true")

    sp = sub.add_parser("rlc")
    _add_method_args(sp)
    sp.add_argument("--samples", type=int, default=2048)
    sp.add_argument("--out", default="-")
    sp.add_argument("--plot", help="optional image file for a rendered figure")

    sp = sub.add_parser("imex-scan")
    sp.add_argument("--mode", required=True, choices=["sector", "parabola"])
    sp.add_argument("--grid", type=int, default=32)

    sp = sub.add_parser("tables")
    sp.add_argument("--which", type=int, required=True, choices=[1, 2, 3])
    sp.add_argument("--allow-slow", action="store_true")
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code) if exc.code else EXIT_OK
    try:
        if args.command in ("angle", "radius", "parabola", "abscissa", "imag-axis"):
            return _run_shape(args, args.command)
        if args.command == "classify":
            return _run_classify(args)
        if args.command == "member":
            return _run_member(args)
        if args.command == "rlc":
            return _run_rlc(args)
        if args.command == "imex-scan":
            return _run_imex_scan(args)
        if args.command == "tables":
            return _run_tables(args)
        raise _usage(f"unknown command {args.command!r}")
    except _UsageError as exc:
        print(str(exc), file=sys.stderr)
        return EXIT_USAGE
    except (NoCandidates, AllCandidatesRejected) as exc:
        print(f"{type(exc).__name__}: {exc}", file=sys.stderr)
        return EXIT_NO_CANDIDATES
    except (UndecidedAtPrecisionCap, VerificationUndecided) as exc:
        print(f"{type(exc).__name__}: {exc}", file=sys.stderr)
        return EXIT_UNDECIDED
    except StabregError as exc:
        print(f"{type(exc).__name__}: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
