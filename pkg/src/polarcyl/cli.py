"""Batch command-line interface emitting deterministic JSON reports.

Subcommands:

* ``surface --m M info``                     lattice and catalog dump
* ``classify --input FILE [--fiber-bound N]`` Fujita classification
* ``cylinder --input FILE [--epsilon P/Q]``   boundary-divisor certificate
* ``blowdown --lemma {1,2,3} --m M [--t T]``  blow-down replay
* ``enumerate-curves --m M --fiber-bound N``  negative-class generators
* ``verify-paper --m-from A --m-to B``        the full verification grid

Exit codes: 0 success, 1 a verification/hypothesis failure (report
embedded), 2 invalid input.  Every rational is serialized as the string
"p/q"; reports are byte-identical across runs for identical inputs.
"""

from __future__ import annotations

import argparse
import json
import random
import sys
from fractions import Fraction

from . import blowdown as blowdown_mod
from . import cone as cone_mod
from . import cylinder as cylinder_mod
from .errors import (ConeModelInsufficientError, HypothesisNotMetError,
                     InfeasibleSupportError, InvalidClassError,
                     InvalidDecompositionError, InvalidParameterError,
                     NotAmpleError, NotContractibleError, PolarCylError,
                     UnrecognizedFaceError)
from .lattice import DivisorClass, make_surface, parse_label
from .singular import anticanonical_on_S, class_on_S_for_label, pushforward, singular_class

_INPUT_ERRORS = (InvalidParameterError, InvalidClassError, InvalidDecompositionError)
_RUN_ERRORS = (HypothesisNotMetError, NotAmpleError, ConeModelInsufficientError,
               UnrecognizedFaceError, InfeasibleSupportError, NotContractibleError)


class InputSpecError(ValueError):
    pass


def format_rational(x) -> str:
    f = Fraction(x)
    return f"{f.numerator}/{f.denominator}"


def parse_rational(text) -> Fraction:
    if isinstance(text, int):
        return Fraction(text)
    if not isinstance(text, str):
        raise InputSpecError(f"rationals must be 'p/q' strings, got {text!r}")
    try:
        if "/" in text:
            num, den = text.split("/")
            return Fraction(int(num), int(den))
        return Fraction(int(text))
    except (ValueError, ZeroDivisionError) as exc:
        raise InputSpecError(f"bad rational {text!r}: {exc}") from None


def class_to_json(cls: DivisorClass):
    return [format_rational(c) for c in cls.coords]


def _emit(report) -> str:
    return json.dumps(report, sort_keys=True, indent=2) + "\n"


# -- input specs ---------------------------------------------------------


def load_polarization_spec(path):
    with open(path, "r", encoding="utf-8") as fh:
        raw = json.load(fh)
    if not isinstance(raw, dict):
        raise InputSpecError("input spec must be a JSON object")
    try:
        m = raw["m"]
        mode = raw["mode"]
    except KeyError as exc:
        raise InputSpecError(f"missing field {exc}") from None
    if not isinstance(m, int):
        raise InputSpecError(f"m must be an integer, got {m!r}")
    model = make_surface(m)
    if mode == "vector":
        coords = raw.get("coordinates")
        if not isinstance(coords, list) or len(coords) != m + 5:
            raise InputSpecError(f"vector mode needs {m + 5} coordinates over (F, E1..E{m + 4})")
        h = singular_class(model, tuple(parse_rational(c) for c in coords))
        return model, {"mode": "vector", "h": h, "raw": raw}
    if mode == "decomposition":
        kind = raw.get("type")
        if kind not in ("B", "C"):
            raise InputSpecError(f"type must be 'B' or 'C', got {kind!r}")
        pairs = raw.get("coefficients", [])
        if not isinstance(pairs, list):
            raise InputSpecError("coefficients must be a list of [label, 'p/q'] pairs")
        coefficients = []
        for item in pairs:
            if not (isinstance(item, list) and len(item) == 2):
                raise InputSpecError(f"bad coefficient entry {item!r}")
            label, value = item
            parse_label(label)
            coefficients.append((label, parse_rational(value)))
        spec = {"mode": "decomposition", "type": kind,
                "coefficients": coefficients, "raw": raw}
        if kind == "C":
            if "a" not in raw:
                raise InputSpecError("type C needs the fibration coefficient 'a'")
            spec["a"] = parse_rational(raw["a"])
        return model, spec
    raise InputSpecError(f"mode must be 'decomposition' or 'vector', got {mode!r}")


def _smooth_count(coefficients) -> int:
    count = 0
    for label, value in coefficients:
        name, _ = parse_label(label)
        if name == "Ei" and value != 0:
            count += 1
    return count


def _polarization_from_spec(model, spec) -> DivisorClass:
    if spec["mode"] == "vector":
        return spec["h"]
    h = anticanonical_on_S(model)
    for label, value in spec["coefficients"]:
        h = h + value * class_on_S_for_label(model, label)
    if spec["type"] == "C":
        h = h + spec["a"] * pushforward(model, model.named_class("B").cls)
    return h


# -- subcommands ---------------------------------------------------------


def cmd_surface(args):
    model = make_surface(args.m)
    catalog = []
    for entry in model.catalog:
        catalog.append({
            "name": entry.name,
            "params": list(entry.params),
            "class": class_to_json(entry.cls),
            "profile": {
                "self_intersection": format_rational(entry.self_intersection),
                "dot_canonical": format_rational(entry.dot_canonical),
                "dot_exceptional": format_rational(entry.dot_exceptional),
                "fiber_degree": format_rational(entry.fiber_degree),
            },
        })
    report = {
        "command": "surface",
        "m": model.m,
        "rank": model.rank,
        "basis": list(model.labels),
        "gram": [[format_rational(x) for x in row] for row in model.gram],
        "canonical": class_to_json(model.canonical),
        "catalog": catalog,
    }
    return 0, report


def cmd_classify(args):
    model, spec = load_polarization_spec(args.input)
    h = _polarization_from_spec(model, spec)
    cone = cone_mod.enumerate_negative_classes(model, args.fiber_bound)
    result = cone_mod.classify_polarization(model, h, cone)
    report = {
        "command": "classify",
        "m": model.m,
        "fiber_degree_bound": cone.fiber_degree_bound,
        "complete": cone.complete,
        "input": spec["raw"],
        "polarization": class_to_json(h),
        "result": {
            "mu": format_rational(result.mu),
            "type": result.type,
            "rank": result.rank,
            "count_smooth": result.count_smooth,
            "a": format_rational(result.a),
            "coefficients": [[label, format_rational(v)] for label, v in result.coefficients],
            "face": [class_to_json(g) for g in result.face],
        },
    }
    if spec["mode"] == "decomposition":
        given_type = spec["type"]
        given_a = spec.get("a", Fraction(0))
        given = sorted((label, value) for label, value in spec["coefficients"] if value != 0)
        computed = sorted(result.coefficients)
        matches = (given_type == result.type
                   and (given_type == "B" or given_a == result.a)
                   and [(l, v) for l, v in given] == [(l, v) for l, v in computed])
        report["decomposition_cross_check"] = {
            "matches_input": matches,
            "note": ("classification is reported in the canonical normal form "
                     "(type C maximizes a), so a consistent input may still differ"),
        }
    return 0, report


def _certificate_to_json(certificate):
    return {
        "case": certificate.case,
        "inner_case": certificate.inner_case,
        "epsilon": format_rational(certificate.epsilon),
        "open_set": certificate.open_set,
        "boundary": [[t.label, format_rational(t.coefficient)] for t in certificate.boundary],
        "polarization": class_to_json(certificate.polarization),
        "transcript": list(certificate.transcript),
        "discrepancies": [
            {"description": d.description, "residual": [format_rational(x) for x in d.residual]}
            for d in certificate.discrepancies
        ],
    }


def _verification_to_json(report):
    return {
        "passed": report.passed,
        "checks": [[name, ok, detail] for name, ok, detail in report.checks],
        "residual": None if report.residual is None
                    else [format_rational(x) for x in report.residual],
    }


def cmd_cylinder(args):
    model, spec = load_polarization_spec(args.input)
    epsilon = parse_rational(args.epsilon) if args.epsilon else None
    if spec["mode"] == "vector":
        cone = cone_mod.enumerate_negative_classes(model, args.fiber_bound)
        result = cone_mod.classify_polarization(model, spec["h"], cone)
        if result.mu != 1:
            spec_note = f"vector input rescaled by mu = {format_rational(result.mu)}"
        else:
            spec_note = "vector input classified before construction"
        coefficients = list(result.coefficients)
        kind, a = result.type, result.a
    else:
        spec_note = None
        coefficients = spec["coefficients"]
        kind, a = spec["type"], spec.get("a")
    s = _smooth_count(coefficients)
    if kind == "B":
        certificate = cylinder_mod.construct_type_B(model, coefficients, s, epsilon=epsilon)
    else:
        certificate = cylinder_mod.construct_type_C(model, a, coefficients, s, epsilon=epsilon)
    verification = cylinder_mod.verify_certificate(model, certificate)
    report = {
        "command": "cylinder",
        "m": model.m,
        "input": spec["raw"],
        "certificate": _certificate_to_json(certificate),
        "verification": _verification_to_json(verification),
    }
    if spec_note:
        report["note"] = spec_note
    return (0 if verification.passed else 1), report


def cmd_blowdown(args):
    report_obj = blowdown_mod.verify_lemma_configuration(args.lemma, args.m, args.t)
    report = {
        "command": "blowdown",
        "lemma": args.lemma,
        "m": args.m,
        "t": args.t,
        "passed": report_obj.passed,
        "checks": [{
            "name": c.name,
            "expected": format_rational(c.expected) if isinstance(c.expected, (int, Fraction))
                        else str(c.expected),
            "actual": format_rational(c.actual) if isinstance(c.actual, (int, Fraction))
                      else str(c.actual),
            "passed": c.passed,
        } for c in report_obj.checks],
        "final_rank": report_obj.sequence.final_rank,
        "final_K_squared": format_rational(report_obj.sequence.final_k_squared),
        "contracted": [class_to_json(c) for c in report_obj.sequence.contracted],
        "images": {key: class_to_json(cls) for key, cls in sorted(report_obj.sequence.images.items())},
    }
    return (0 if report_obj.passed else 1), report


def cmd_enumerate(args):
    model = make_surface(args.m)
    cone = cone_mod.enumerate_negative_classes(model, args.fiber_bound)
    report = {
        "command": "enumerate-curves",
        "m": args.m,
        "fiber_degree_bound": cone.fiber_degree_bound,
        "complete": cone.complete,
        "count": len(cone.generators),
        "generators": [class_to_json(g) for g in cone.generators],
    }
    return 0, report


# -- verify-paper grid ----------------------------------------------------


def _rand_unit(rng, ceiling=Fraction(1)) -> Fraction:
    """Random rational strictly inside (0, ceiling)."""
    den = rng.randint(2, 12)
    num = rng.randint(1, den - 1)
    return Fraction(num, den) * ceiling


def _draw_type_b(model, rng, s):
    n = model.m + 4
    smooth = [(f"E{i}", _rand_unit(rng)) for i in range(1, s + 1)]
    through = []
    for j in range(s + 1, n + 1):
        if rng.random() < 0.5:
            through.append((f"E{j}'", _rand_unit(rng, Fraction(2, model.m - 1))))
    return smooth + through


def _draw_type_c(model, rng, s, fiber_branch=False):
    n = model.m + 4
    smooth = [(f"E{i}", _rand_unit(rng)) for i in range(1, s + 1)]
    through = []
    for j in range(5, n + 1):
        if rng.random() < 0.5:
            through.append((f"E{j}'", _rand_unit(rng, Fraction(2, model.m - 1))))
    a = Fraction(rng.randint(1, 40), rng.randint(1, 10))
    if fiber_branch:
        a = a + 3
    return a, smooth + through


def _grid_for_m(model, results, draws):
    m = model.m
    rng = random.Random(10_000 + m)

    def add(check, passed, t=None, detail=""):
        results.append({"check": check, "m": m, "t": t, "passed": bool(passed),
                        "detail": detail})

    # catalog numerics
    from .singular import canonical_on_S, intersect_on_S
    k_s = canonical_on_S(model)
    ok = True
    for i in range(1, m + 5):
        through = pushforward(model, model.class_for_label(f"E{i}'"))
        away = pushforward(model, model.class_for_label(f"E{i}"))
        ok &= intersect_on_S(model, through, through) == Fraction(-(m - 1), m)
        ok &= intersect_on_S(model, through, k_s) == Fraction(-2, m)
        ok &= intersect_on_S(model, away, away) == -1
        ok &= intersect_on_S(model, away, k_s) == -1
    add("catalog-singular-numbers", ok)
    profiles = {"Gamma": (0, -2), "C": (-1, -1), "Cq": (0, -2),
                "CqAlt": (-2, 0), "B": (0, -2)}
    ok = all(model.named_class(name).profile[:2] == (expected[0], expected[1])
             for name, expected in profiles.items())
    ok &= all(model.named_class("EiDoublePrime", (i,)).profile[:2] == (-1, -1)
              for i in range(1, 5))
    add("catalog-profiles", ok)

    # tangent 0-curve numerics
    gamma = model.named_class("Gamma")
    add("tangent-0-curve", gamma.self_intersection == 0 and gamma.dot_canonical == -2
        and gamma.dot_exceptional == 2
        and model.euler_characteristic(gamma.cls) == 2)

    # blow-down grid
    for t in range(2, m + 5):
        rep = blowdown_mod.verify_lemma_configuration(1, m, t)
        add("blowdown-pipeline-1", rep.passed, t=t)
    for lemma in (2, 3):
        rep = blowdown_mod.verify_lemma_configuration(lemma, m)
        add(f"blowdown-pipeline-{lemma}", rep.passed)

    # cylinder branches
    def run_b(s, tag):
        ok = True
        detail = ""
        for _ in range(draws):
            coeffs = _draw_type_b(model, rng, s)
            cert = cylinder_mod.construct_type_B(model, coeffs, s)
            rep = cylinder_mod.verify_certificate(model, cert)
            ok &= rep.passed
            if tag == "subcase-1-3":
                ok &= any(not d.is_exact for d in cert.discrepancies)
            if not rep.passed and not detail:
                detail = str(rep.failures())
        add(tag, ok, detail=detail)

    run_b(m + 4, "subcase-1-1")
    run_b(3, "subcase-1-2")
    run_b(2, "subcase-1-3")
    run_b(1, "subcase-1-4")
    for s in (1, 2, 3, 4):
        ok = True
        for _ in range(draws):
            a, coeffs = _draw_type_c(model, rng, s)
            cert = cylinder_mod.construct_type_C(model, a, coeffs, s)
            ok &= cylinder_mod.verify_certificate(model, cert).passed
        add(f"type-C-reduction-s{s}", ok)
    ok = True
    for _ in range(draws):
        a, coeffs = _draw_type_c(model, rng, 0, fiber_branch=True)
        cert = cylinder_mod.construct_type_C(model, a, coeffs, 0)
        ok &= cylinder_mod.verify_certificate(model, cert).passed
    add("type-C-fiber", ok)


def cmd_verify_paper(args):
    if args.m_from < 2 or args.m_to < args.m_from:
        raise InvalidParameterError("need 2 <= m-from <= m-to")
    results = []
    for m in range(args.m_from, args.m_to + 1):
        _grid_for_m(make_surface(m), results, draws=args.draws)
    results.sort(key=lambda r: (r["check"], r["m"], r["t"] if r["t"] is not None else -1))
    passed = all(r["passed"] for r in results)
    report = {
        "command": "verify-paper",
        "m_from": args.m_from,
        "m_to": args.m_to,
        "passed": passed,
        "results": results,
    }
    return (0 if passed else 1), report


# -- entry point ----------------------------------------------------------


def build_parser():
    parser = argparse.ArgumentParser(prog="polarcyl", description=__doc__)
    sub = parser.add_subparsers(dest="subcommand", required=True)

    p = sub.add_parser("surface", help="lattice and catalog dump")
    p.add_argument("--m", type=int, required=True)
    p.add_argument("action", choices=["info"])
    p.set_defaults(func=cmd_surface)

    p = sub.add_parser("classify", help="Fujita classification of a polarization")
    p.add_argument("--input", required=True)
    p.add_argument("--fiber-bound", type=int, default=2)
    p.set_defaults(func=cmd_classify)

    p = sub.add_parser("cylinder", help="construct and verify a cylinder certificate")
    p.add_argument("--input", required=True)
    p.add_argument("--epsilon", default=None)
    p.add_argument("--fiber-bound", type=int, default=2)
    p.set_defaults(func=cmd_cylinder)

    p = sub.add_parser("blowdown", help="replay one blow-down pipeline")
    p.add_argument("--lemma", type=int, required=True, choices=[1, 2, 3])
    p.add_argument("--m", type=int, required=True)
    p.add_argument("--t", type=int, default=None)
    p.set_defaults(func=cmd_blowdown)

    p = sub.add_parser("enumerate-curves", help="negative-class generators")
    p.add_argument("--m", type=int, required=True)
    p.add_argument("--fiber-bound", type=int, default=2)
    p.set_defaults(func=cmd_enumerate)

    p = sub.add_parser("verify-paper", help="run the whole verification grid")
    p.add_argument("--m-from", type=int, required=True)
    p.add_argument("--m-to", type=int, required=True)
    p.add_argument("--draws", type=int, default=3)
    p.set_defaults(func=cmd_verify_paper)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        code, report = args.func(args)
    except (InputSpecError, *_INPUT_ERRORS) as exc:
        sys.stdout.write(_emit({"error": str(exc), "kind": type(exc).__name__}))
        return 2
    except OSError as exc:
        sys.stdout.write(_emit({"error": str(exc), "kind": "OSError"}))
        return 2
    except json.JSONDecodeError as exc:
        sys.stdout.write(_emit({"error": str(exc), "kind": "JSONDecodeError"}))
        return 2
    except _RUN_ERRORS as exc:
        sys.stdout.write(_emit({"error": str(exc), "kind": type(exc).__name__,
                                "reason": _reason_tag(exc)}))
        return 1
    sys.stdout.write(_emit(report))
    return code


def _reason_tag(exc) -> str:
    return {
        HypothesisNotMetError: "hypothesis-not-met",
        NotAmpleError: "not-ample",
        ConeModelInsufficientError: "cone-model-insufficient",
        UnrecognizedFaceError: "unrecognized-face",
        InfeasibleSupportError: "infeasible-support",
        NotContractibleError: "not-contractible",
    }.get(type(exc), "error")


if __name__ == "__main__":
    sys.exit(main())
