"""Command-line front end: analyze maps, quadratic polynomials, sigmas.

Commands:
    grd analyze <expr>   full decision + certificate for a degree-2 map
    grd quadpoly --k N | --c p/q    quadratic polynomial criteria
    grd sigma <expr>     moduli coordinates only
Batch mode: pass "-" (or pipe with no expression) to read one expression per
line from standard input; output order matches input order.
All reports are deterministic: exact values rendered as canonical strings.
"""

from __future__ import annotations

import argparse
import json
import sys
from fractions import Fraction
from importlib import resources
from typing import Optional

from .exactnum import element_from_str, element_to_str, factor_integer, valuation
from .invariants import sigma_invariants
from .mapexpr import MapSyntaxError, format_map, format_poly, parse_map
from .pgr import (
    Decision,
    LocalAnalysis,
    PgrCertificate,
    Verdict,
    decide_pgr,
    is_minimal_by_valuation,
    is_minimal_monic,
)
from .ratmap import (
    DegenerateMapError,
    Moebius,
    RatMap2,
    conjugate,
    normalize_content,
    normalize_content_with_scale,
    resultant,
)


def _e(x) -> str:
    return element_to_str(x)


def _val_str(v) -> str:
    return "inf" if v == float("inf") else str(v)


def _map_dict(m: RatMap2) -> dict:
    return {
        "num": [_e(c) for c in m.num],
        "den": [_e(c) for c in m.den],
        "expression": format_map(m),
    }


def _map_from_dict(d: dict) -> RatMap2:
    return RatMap2(
        tuple(element_from_str(s) for s in d["num"]),
        tuple(element_from_str(s) for s in d["den"]),
    )


def _moebius_list(f: Moebius) -> list[str]:
    return [_e(f.a), _e(f.b), _e(f.c), _e(f.d)]


def _moebius_from_list(vals: list[str]) -> Moebius:
    return Moebius(*(element_from_str(s) for s in vals))


def _analysis_dict(la: LocalAnalysis) -> dict:
    def opt(x):
        return None if x is None else _e(x)

    return {
        "p": la.p,
        "verdict": la.verdict.value,
        "lambda1": opt(la.lambda1),
        "lambda2": opt(la.lambda2),
        "e1": None if la.e1 is None else _val_str(la.e1),
        "e2": None if la.e2 is None else _val_str(la.e2),
        "a1": opt(la.a1),
        "a2": opt(la.a2),
        "a": opt(la.a),
        "d": la.d,
        "c_exponent": la.c_exponent,
        "swapped": la.swapped,
    }


def _certificate_dict(cert: PgrCertificate) -> dict:
    return {
        "extension_t": cert.extension_t,
        "c": _e(cert.c),
        "f": _moebius_list(cert.f),
        "g": _moebius_list(cert.g),
        "final_map": _map_dict(cert.result),
        "final_resultant": _e(cert.res_after),
        "base_resultant": _e(cert.res_before),
        "content": _e(cert.content),
        "primes": list(cert.primes),
    }


def verify_certificate(m: RatMap2, cert: PgrCertificate) -> bool:
    """Independent re-check: redo the conjugation from the input map and
    recompute the final resultant through the quadratic-minor identity."""
    step = normalize_content(conjugate(m, cert.f))
    final, _ = normalize_content_with_scale(conjugate(step, cert.g))
    if final != cert.result:
        return False
    r = _resultant_minor(final)
    if r != cert.res_after:
        return False
    return all(valuation(r, p) == 0 for p in cert.primes)


def _resultant_minor(m: RatMap2):
    # second route to the resultant of a pair of quadratic forms
    d1 = m.f2 * m.g0 - m.f0 * m.g2
    d2 = m.f2 * m.g1 - m.f1 * m.g2
    d3 = m.f1 * m.g0 - m.f0 * m.g1
    return d1 * d1 - d2 * d3


def build_report(
    text: str,
    primes: Optional[list[int]] = None,
    construct: bool = True,
    verify: bool = True,
) -> dict:
    """Full analysis of one map expression as a JSON-ready dict."""
    m = normalize_content(parse_map(text))
    res = resultant(m)
    decision: Decision = decide_pgr(m, primes=primes, construct=construct)
    spectrum = decision.spectrum
    if primes is not None:
        min_primes = sorted(primes)
    else:
        num = abs(res.numerator)
        min_primes = [p for p, _ in factor_integer(num)] if num > 1 else []
    report = {
        "input": text,
        "map": _map_dict(m),
        "resultant": _e(res),
        "sigma": {
            "sigma1": _e(spectrum.sigma1),
            "sigma2": _e(spectrum.sigma2),
            "sigma3": _e(spectrum.sigma3),
            "multipliers": None
            if spectrum.multipliers is None
            else [_e(x) for x in spectrum.multipliers],
        },
        "verdict": decision.verdict.value,
        "reason": decision.reason or None,
        "witness": None
        if decision.witness is None
        else {
            "prime": decision.witness.prime,
            "primes": list(decision.witness.primes),
            "sigma1_val": _val_str(decision.witness.sigma1_val),
            "sigma2_val": _val_str(decision.witness.sigma2_val),
            "multiplier": None
            if decision.witness.multiplier is None
            else _e(decision.witness.multiplier),
        },
        "primes": [_analysis_dict(la) for la in decision.analyses],
        "certificate": None
        if decision.certificate is None
        else _certificate_dict(decision.certificate),
        "minimality": {
            "by_valuation": {
                str(p): is_minimal_by_valuation(m, p) for p in min_primes
            },
            "monic_shape": is_minimal_monic(m),
        },
        "verified": None,
    }
    if verify and decision.certificate is not None:
        report["verified"] = verify_certificate(m, decision.certificate)
    return report


def report_from_dict(d: dict) -> dict:
    """Rebuild the exact objects of a report (lossless round-trip helper)."""
    out = dict(d)
    out["map_obj"] = _map_from_dict(d["map"])
    if d.get("certificate"):
        c = d["certificate"]
        out["certificate_obj"] = {
            "c": element_from_str(c["c"]),
            "f": _moebius_from_list(c["f"]),
            "g": _moebius_from_list(c["g"]),
            "final_map": _map_from_dict(c["final_map"]),
            "final_resultant": element_from_str(c["final_resultant"]),
        }
    return out


def _report_text(report: dict) -> str:
    lines = [f"map: {report['map']['expression']}"]
    lines.append(f"resultant: {report['resultant']}")
    s = report["sigma"]
    lines.append(f"sigma: ({s['sigma1']}, {s['sigma2']}, {s['sigma3']})")
    if s["multipliers"]:
        lines.append("multipliers: " + ", ".join(s["multipliers"]))
    lines.append(f"verdict: {report['verdict']}")
    if report.get("reason"):
        lines.append(f"reason: {report['reason']}")
    if report["witness"]:
        w = report["witness"]
        lines.append(
            f"witness: prime {w['prime']}, val(sigma1) = {w['sigma1_val']}, "
            f"val(sigma2) = {w['sigma2_val']}"
            + (f", multiplier {w['multiplier']}" if w["multiplier"] else "")
        )
    for la in report["primes"]:
        detail = ", ".join(
            f"{k}={la[k]}"
            for k in ("e1", "e2", "a1", "a2", "a", "d", "c_exponent")
            if la[k] is not None
        )
        lines.append(f"p = {la['p']}: {la['verdict']}" + (f" ({detail})" if detail else ""))
    cert = report["certificate"]
    if cert:
        f_str, g_str = cert["f"], cert["g"]
        lines.append(f"conjugators: f = [{', '.join(f_str)}], g = [{', '.join(g_str)}]")
        lines.append(f"c = {cert['c']}" + (f" in Q(sqrt({cert['extension_t']}))" if cert["extension_t"] else ""))
        lines.append(f"final map: {cert['final_map']['expression']}")
        lines.append(f"final resultant: {cert['final_resultant']}")
    mini = report["minimality"]
    flags = ", ".join(f"v(Res) < 2 at {p}: {v}" for p, v in mini["by_valuation"].items())
    lines.append(f"minimal (valuation): {flags or 'no primes checked'}")
    lines.append(f"minimal (monic shape): {mini['monic_shape']}")
    if report["verified"] is not None:
        lines.append(f"certificate verified: {report['verified']}")
    return "\n".join(lines)


def _quadpoly_report(args) -> dict:
    from .quadpoly import conjugate_to_good_quadratic, k4_criterion, pgr_quadratic

    if args.k is not None:
        k = args.k
        c = Fraction(k, 4)
        verdict = k4_criterion(k)
        report = {
            "k": k,
            "c": _e(c),
            "pgr": pgr_quadratic(c).is_pgr,
            "good_over_q": not verdict.requires_extension,
        }
        if not verdict.requires_extension:
            report["b"] = verdict.b
            report["c_int"] = verdict.c
            report["model"] = format_poly([Fraction(verdict.c), Fraction(verdict.b), Fraction(1)])
        else:
            cert = conjugate_to_good_quadratic(c)
            report["model"] = format_map(cert.result)
            report["extension_t"] = cert.extension_t
        return report
    c = Fraction(args.c)
    q = pgr_quadratic(c)
    report = {
        "c": _e(c),
        "pgr": q.is_pgr,
        "failing_primes": list(q.failing_primes),
    }
    if q.is_pgr:
        cert = conjugate_to_good_quadratic(c)
        report["model"] = format_map(cert.result)
        report["extension_t"] = cert.extension_t
        report["final_resultant"] = _e(cert.res_after)
    return report


def _quadpoly_text(report: dict) -> str:
    lines = []
    if "k" in report:
        lines.append(f"k = {report['k']} (c = {report['c']})")
        lines.append(f"potential good reduction: {report['pgr']}")
        if report["good_over_q"]:
            lines.append(f"good over Q: {report['model']}")
        else:
            lines.append("good over Q: no (k = 2, 3 mod 4 needs a quadratic extension)")
            target = f" over Q(sqrt({report['extension_t']}))" if report.get("extension_t") else ""
            lines.append(f"extension model: {report['model']}{target}")
    else:
        lines.append(f"c = {report['c']}")
        lines.append(f"potential good reduction: {report['pgr']}")
        if report["failing_primes"]:
            lines.append(f"failing primes: {report['failing_primes']}")
        if report.get("model"):
            target = f" over Q(sqrt({report['extension_t']}))" if report.get("extension_t") else ""
            lines.append(f"good model: {report['model']}{target}")
    return "\n".join(lines)


def load_schema() -> dict:
    with resources.files("grd").joinpath("report_schema.json").open("r") as fh:
        return json.load(fh)


def _parse_primes(spec: Optional[str]) -> Optional[list[int]]:
    if spec is None:
        return None
    try:
        return [int(tok) for tok in spec.split(",") if tok.strip()]
    except ValueError as exc:
        raise argparse.ArgumentTypeError(f"bad prime list {spec!r}") from exc


def _emit(report: dict, as_json: bool, text_renderer) -> None:
    if as_json:
        sys.stdout.write(json.dumps(report, ensure_ascii=False) + "\n")
    else:
        sys.stdout.write(text_renderer(report) + "\n")


def main(argv: Optional[list[str]] = None) -> int:
    parser = argparse.ArgumentParser(
        prog="grd",
        description="decide potential good reduction of degree-2 rational maps over Q",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    pa = sub.add_parser("analyze", help="analyze a rational map expression")
    pa.add_argument("expr", nargs="?", default="-",
                    help="map expression like (z^2-2*z)/(-2*z+1); '-' reads lines from stdin")
    pa.add_argument("--json", action="store_true", help="machine-readable output")
    pa.add_argument("--primes", type=str, default=None,
                    help="restrict analysis to a comma-separated prime list")
    pa.add_argument("--no-construct", action="store_true",
                    help="decision only, skip conjugator construction")
    pa.add_argument("--verify", dest="verify", action="store_true", default=True,
                    help="re-check the certificate independently (default)")
    pa.add_argument("--no-verify", dest="verify", action="store_false")

    pq = sub.add_parser("quadpoly", help="quadratic polynomial criteria")
    group = pq.add_mutually_exclusive_group(required=True)
    group.add_argument("--k", type=int, default=None, help="analyze z^2 + k/4")
    group.add_argument("--c", type=str, default=None, help="analyze z^2 + c, c rational")
    pq.add_argument("--json", action="store_true")

    ps = sub.add_parser("sigma", help="print the moduli coordinates of a map")
    ps.add_argument("expr")
    ps.add_argument("--json", action="store_true")

    args = parser.parse_args(argv)
    try:
        if args.command == "analyze":
            primes = _parse_primes(args.primes)
            texts = (
                [line.strip() for line in sys.stdin if line.strip()]
                if args.expr == "-"
                else [args.expr]
            )
            for text in texts:
                report = build_report(
                    text,
                    primes=primes,
                    construct=not args.no_construct,
                    verify=args.verify,
                )
                _emit(report, args.json, _report_text)
        elif args.command == "quadpoly":
            report = _quadpoly_report(args)
            _emit(report, args.json, _quadpoly_text)
        elif args.command == "sigma":
            m = normalize_content(parse_map(args.expr))
            s = sigma_invariants(m)
            report = {
                "input": args.expr,
                "sigma1": _e(s.sigma1),
                "sigma2": _e(s.sigma2),
                "sigma3": _e(s.sigma3),
                "multipliers": None
                if s.multipliers is None
                else [_e(x) for x in s.multipliers],
            }
            _emit(
                report,
                args.json,
                lambda r: f"sigma: ({r['sigma1']}, {r['sigma2']}, {r['sigma3']})"
                + (f"\nmultipliers: {', '.join(r['multipliers'])}" if r["multipliers"] else ""),
            )
        return 0
    except (MapSyntaxError, DegenerateMapError, ValueError, ZeroDivisionError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
