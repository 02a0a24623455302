"""Command-line interface.

Every subcommand prints a single JSON document with the keys
schema_version, command, input, result, witnesses, caps, timing.
Exit codes: 0 success, 2 input error, 3 cap-limited Unknown-only result.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
import time
from fractions import Fraction

from .exactnum import AlgebraicNumber, Place
from .intervals import RealInterval
from .curves import (PlaneCurve, curve_preperiodicity, dmm_report,
                     find_preperiodic_points, points_at_infinity, pushforward)
from .green import GreenContext, bad_places, green_homog, green_value
from .heights import canonical_height, is_preperiodic
from .infinity import fixed_points_infinity, infinity_orbit_preperiodicity
from .localdyn import (GermShapeError, localize_at_infinity, parabolic_normal_form,
                       reduce_form, saddle_normal_form, super_stable_series)
from .maps import NotRegular, make_regular_map
from .polyalg import PolyParseError

SCHEMA_VERSION = 1


class InputError(ValueError):
    pass


def _default_tol() -> Fraction:
    raw = os.environ.get("REGDYN_TOL", "1e-9")
    try:
        return _parse_tol(raw)
    except (ValueError, ZeroDivisionError):
        return Fraction(1, 10**9)


def _parse_tol(text: str) -> Fraction:
    return Fraction(text) if "/" in text else Fraction(str(text))


def _parse_map(text: str):
    parts = text.split(",")
    if len(parts) != 2:
        raise InputError("map must be two comma-separated polynomials in z, w")
    try:
        return make_regular_map(parts[0].strip(), parts[1].strip())
    except (PolyParseError, NotRegular, ValueError) as exc:
        raise InputError(f"bad map: {exc}") from exc


def _parse_point(text: str, n: int = 2):
    parts = [p.strip() for p in text.split(",")]
    if len(parts) != n:
        raise InputError(f"point must be {n} comma-separated rationals")
    try:
        return tuple(Fraction(p) for p in parts)
    except (ValueError, ZeroDivisionError) as exc:
        raise InputError(f"bad rational: {exc}") from exc


def _parse_place(text: str) -> Place:
    if text in ("inf", "oo", "arch"):
        return Place.archimedean()
    try:
        p = int(text)
    except ValueError as exc:
        raise InputError(f"place must be 'inf' or a prime, got {text!r}") from exc
    return Place.finite(p)


# -- JSON rendering ---------------------------------------------------------


def _json(value):
    """Recursively render domain objects into JSON-serializable data."""
    if isinstance(value, Fraction):
        return {"exact": f"{value.numerator}/{value.denominator}",
                "approx": float(value)}
    if isinstance(value, AlgebraicNumber):
        if value.is_rational():
            return _json(value.as_rational())
        z = complex(value.approx())
        return {"minpoly": str(value.minpoly.as_expr()),
                "root_index": value.embedding_index,
                "approx": [z.real, z.imag]}
    if isinstance(value, Place):
        return value.prime if value.is_finite else "inf"
    if isinstance(value, RealInterval):
        return {"lo": float(value.lower), "hi": float(value.upper),
                "lo_exact": f"{value.lower.numerator}/{value.lower.denominator}",
                "hi_exact": f"{value.upper.numerator}/{value.upper.denominator}"}
    if hasattr(value, "__dataclass_fields__"):
        d = {"type": type(value).__name__}
        d.update({k: _json(getattr(value, k)) for k in value.__dataclass_fields__})
        return d
    if isinstance(value, dict):
        return {str(k): _json(v) for k, v in value.items()}
    if isinstance(value, (list, tuple)):
        return [_json(v) for v in value]
    if isinstance(value, (int, float, str, bool)) or value is None:
        return value
    return repr(value)


def _point_json(pt):
    return {"chart": pt.chart, "coordinate": _json(pt.coordinate),
            "multiplicity": pt.multiplicity}


# -- subcommand handlers ----------------------------------------------------
# each returns (result, witnesses, caps, exit_code)


def _cmd_classify(args):
    f = _parse_map(args.map)
    pts = fixed_points_infinity(f)
    result = {"degree": f.d, "bad_places": sorted(bad_places(f)),
              "fixed_points_at_infinity": []}
    for pt in pts:
        result["fixed_points_at_infinity"].append({
            "point": _point_json(pt),
            "multiplier": _json(pt.multiplier),
            "classification": _json(pt.classification)})
    return result, {"multiplicity_sum": sum(p.multiplicity for p in pts)}, {}, 0


def _cmd_green(args):
    f = _parse_map(args.map)
    v = _parse_place(args.place)
    tol = _parse_tol(args.tol) if args.tol else _default_tol()
    ctx = GreenContext(f, v)
    if args.homog:
        pt = _parse_point(args.homog, 3)
        g = green_homog(ctx, pt, tol)
        inp = {"homogeneous_point": [_json(c) for c in pt]}
    else:
        pt = _parse_point(args.point)
        g = green_value(ctx, pt, tol)
        inp = {"point": [_json(c) for c in pt]}
    result = {"green": _json(g), "place": _json(v)}
    result.update(inp)
    wit = {"nullstellensatz_constant": _json(ctx.C),
           "good_reduction": ctx.good_reduction}
    return result, wit, {"tol": float(tol)}, 0


def _cmd_height(args):
    f = _parse_map(args.map)
    pt = _parse_point(args.point)
    tol = _parse_tol(args.tol) if args.tol else _default_tol()
    h = canonical_height(f, pt, tol)
    verdict = is_preperiodic(f, pt, tol=tol)
    result = {"canonical_height": _json(h.value),
              "support": [_json(v) for v in h.support],
              "certified": h.certified,
              "preperiodicity": _json(verdict)}
    code = 3 if verdict.kind == "Unknown" else 0
    return result, {"verdict_witness": _json(verdict)}, {"tol": float(tol)}, code


def _cmd_orbit(args):
    f = _parse_map(args.map)
    pt = _parse_point(args.point)
    rows = [pt]
    try:
        for _ in range(args.n):
            pt = f.apply(pt)
            rows.append(pt)
        capped = False
    except Exception:
        capped = True
    result = {"orbit": [[_json(c) for c in row] for row in rows],
              "length": len(rows)}
    return result, {}, {"n": args.n, "bit_capped": capped}, 0


def _cmd_stable_manifold(args):
    f = _parse_map(args.map)
    N = args.order
    pts = [p for p in fixed_points_infinity(f)
           if type(p.classification).__name__ != "Superattracting"
           and p.coordinate.is_rational()]
    if args.point:
        t = Fraction(args.point)
        pts = [p for p in pts if p.coordinate.as_rational() == t]
    if not pts:
        raise InputError("no matching non-superattracting rational fixed point "
                         "at infinity")
    reports = []
    for p in pts:
        germ = localize_at_infinity(f, p, N)
        phi = super_stable_series(germ)
        entry = {"point": _point_json(p),
                 "lambda": _json(germ.lam),
                 "phi_coefficients": [_json(c) for c in phi.coeffs]}
        try:
            red = reduce_form(germ, phi)
            if germ.lam == 1:
                k, res = parabolic_normal_form(germ)
                entry["normal_form"] = {"kind": "parabolic", "k": k,
                                        "steps": len(res.conjugacies),
                                        "verified": res.verify()}
            else:
                res = saddle_normal_form(red.germ)
                entry["normal_form"] = {"kind": "saddle",
                                        "steps": len(res.conjugacies),
                                        "verified": res.verify()}
        except (GermShapeError, ValueError) as exc:
            entry["normal_form"] = {"kind": "unavailable", "reason": str(exc)}
        reports.append(entry)
    return {"manifolds": reports}, {}, {"order": N}, 0


def _cmd_curve(args):
    f = _parse_map(args.map)
    try:
        C = PlaneCurve(args.curve)
    except (PolyParseError, ValueError) as exc:
        raise InputError(f"bad curve: {exc}") from exc
    div = points_at_infinity(C)
    img = pushforward(f, C)
    status = curve_preperiodicity(f, C, args.max_iters, args.max_degree)
    result = {"curve": C.poly.to_string(),
              "points_at_infinity": [_point_json(p) for p in div.points],
              "pushforward": img.poly.to_string(),
              "orbit_status": _json(status)}
    caps = {"max_iters": args.max_iters, "max_degree": args.max_degree}
    code = 3 if status.kind == "NotDetectedPreperiodic" else 0
    return result, {"orbit_degrees": [c.degree for c in status.orbit]}, caps, code


def _cmd_dmm(args):
    f = _parse_map(args.map)
    try:
        C = PlaneCurve(args.curve)
    except (PolyParseError, ValueError) as exc:
        raise InputError(f"bad curve: {exc}") from exc
    rep = dmm_report(f, C, args.max_iters, args.max_degree,
                     args.height_bound, args.max_order)
    result = {
        "hypothesis_witnessed": rep.hypothesis_witnessed,
        "conclusion_witnessed": rep.conclusion_witnessed,
        "consistency": rep.consistency,
        "curve_status": _json(rep.curve_status),
        "infinity_points": [{
            "point": _point_json(r.point),
            "orbit": _json(r.orbit_verdict),
            "terminal_classification": _json(r.terminal_classification),
            "note": r.note} for r in rep.infinity_points],
        "preperiodic_points_found": [_json(p) for p in rep.preperiodic_points],
        "notes": rep.notes,
    }
    caps = {"max_iters": args.max_iters, "max_degree": args.max_degree,
            "height_bound": args.height_bound, "max_order": args.max_order}
    unresolved = (rep.curve_status.kind == "NotDetectedPreperiodic"
                  and not rep.hypothesis_witnessed and not rep.preperiodic_points)
    return result, {}, caps, 3 if unresolved else 0


def _build_parser():
    p = argparse.ArgumentParser(prog="regdyn", description=__doc__)
    sub = p.add_subparsers(dest="command", required=True)

    def add(name, handler, **kw):
        sp = sub.add_parser(name, **kw)
        sp.set_defaults(handler=handler)
        sp.add_argument("--map", required=True,
                        help='two polynomials in z, w: "z^2, w^2"')
        return sp

    add("classify", _cmd_classify,
        help="regularity, fixed points at infinity, multiplier trichotomy")

    g = add("green", _cmd_green, help="local Green value at a point")
    g.add_argument("--point", help='affine point "z,w"')
    g.add_argument("--homog", help='homogeneous point "z0,z1,z2"')
    g.add_argument("--place", default="inf", help="'inf' or a prime")
    g.add_argument("--tol", help="enclosure width target")

    h = add("height", _cmd_height, help="canonical height and preperiodicity")
    h.add_argument("--point", required=True)
    h.add_argument("--tol")

    o = add("orbit", _cmd_orbit, help="exact orbit table")
    o.add_argument("--point", required=True)
    o.add_argument("-n", type=int, default=10)

    s = add("stable-manifold", _cmd_stable_manifold,
            help="localization, stable-manifold series, normal form")
    s.add_argument("--point", help="chart-0 coordinate of the fixed point")
    s.add_argument("--order", type=int, default=16, help="truncation order")

    c = add("curve", _cmd_curve,
            help="points at infinity, pushforward, curve orbit")
    c.add_argument("--curve", required=True)
    c.add_argument("--max-iters", type=int, default=8)
    c.add_argument("--max-degree", type=int, default=64)

    d = add("dmm", _cmd_dmm, help="full dynamical Manin-Mumford report")
    d.add_argument("--curve", required=True)
    d.add_argument("--max-iters", type=int, default=8)
    d.add_argument("--max-degree", type=int, default=64)
    d.add_argument("--height-bound", type=int, default=3)
    d.add_argument("--max-order", type=int, default=24)
    return p


def run(argv=None) -> int:
    parser = _build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return 0 if exc.code == 0 else 2
    t0 = time.monotonic()
    doc = {"schema_version": SCHEMA_VERSION, "command": args.command,
           "input": {k: v for k, v in vars(args).items()
                     if k not in ("handler", "command") and v is not None}}
    try:
        result, witnesses, caps, code = args.handler(args)
    except InputError as exc:
        doc.update(error=str(exc), timing={"seconds": time.monotonic() - t0})
        print(json.dumps(doc, indent=2))
        return 2
    except (NotRegular, PolyParseError) as exc:
        doc.update(error=str(exc), timing={"seconds": time.monotonic() - t0})
        print(json.dumps(doc, indent=2))
        return 2
    doc.update(result=result, witnesses=witnesses, caps=caps,
               timing={"seconds": time.monotonic() - t0})
    print(json.dumps(doc, indent=2))
    return code


def main():
    sys.exit(run())


if __name__ == "__main__":
    main()
