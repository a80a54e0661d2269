"""Command-line front end: load JSON artifacts, compute, report.

Reports are deterministic: identical inputs and seed produce byte-identical
JSON (timing is opt-in via --timing for that reason).  The text rendering is
derived from the same report content.
"""

from __future__ import annotations

import argparse
import os
import sys
import time
from fractions import Fraction

from . import jsonio
from .complexes import ComplexPair, SimplicialComplex
from .errors import GableError
from .groups import invariant_factors
from .homology import homology, induced_homology_map
from .limits import inverse_limit, restricted_limit_compare
from .nerve import (
    cech_homology,
    common_refinement,
    nerve,
    projection,
)
from .posets import cofinality_class
from .roof import (
    DiagonalRegion,
    fundamental_cycle,
    fundamental_roof_check,
    relative_cycle_class,
    roof,
    roof_family,
)
from .shuffle import cross, product_complex, quotient_project
from .subdivision import (
    barycentric_subdivision,
    cone_pair,
    retract_point,
    subdivision_partition_check,
)
from .suites import run_suite


def _read_json(path):
    with open(path, "r", encoding="utf-8") as fh:
        return jsonio.loads(fh.read())


def _load_complex(path):
    return jsonio.complex_from_json(_read_json(path))


def _load_pair(args):
    if getattr(args, "pair", None):
        return jsonio.pair_from_json(_read_json(args.pair))
    if not getattr(args, "complex", None):
        raise GableError("either --pair or --complex is required")
    complex = _load_complex(args.complex)
    if getattr(args, "sub", None):
        sub = _load_complex(args.sub)
    else:
        sub = SimplicialComplex.empty()
    return ComplexPair(complex, sub)


def _factors_json(factors):
    return jsonio.factors_to_json(factors)


def cmd_homology(args):
    pair = _load_pair(args)
    factors, gens = homology(pair, args.k, reduced=args.reduced)
    return {
        "factors": _factors_json(factors),
        "generators": [jsonio.chain_to_json(g) for g in gens],
    }


def cmd_subdivide(args):
    complex = _load_complex(args.complex)
    sub = _load_complex(args.sub) if args.sub else None
    result = barycentric_subdivision(complex, sub)
    out = {
        "sd_complex": jsonio.complex_to_json(result.sd_complex),
        "realization": {
            jsonio.dumps(jsonio._label_to_json(label)).strip():
                jsonio.point_to_json(point)
            for label, point in sorted(result.realization.items())
        },
    }
    if sub is not None:
        out["induced_sub"] = jsonio.complex_to_json(result.induced_sub)
    if args.check:
        report = subdivision_partition_check(complex, result)
        out["partition_check"] = {
            "violations": [repr(v) for v in report["violations"]],
            "per_simplex": {
                str(s): {
                    "cell_count": entry["cell_count"],
                    "top_cells": entry["top_cells"],
                    "volumes": [jsonio.fraction_to_json(v)
                                for v in entry["volumes"]],
                    "volume_sum": jsonio.fraction_to_json(entry["volume_sum"]),
                }
                for s, entry in sorted(report["per_simplex"].items())
            },
        }
    return out


def cmd_cone(args):
    pair = _load_pair(args)
    cone, apex = cone_pair(pair)
    return {"cone_complex": jsonio.complex_to_json(cone),
            "apex": jsonio._label_to_json(apex)}


def cmd_retract(args):
    complex = _load_complex(args.complex)
    sub = _load_complex(args.sub)
    point = jsonio.point_from_json(_read_json(args.point), complex)
    result = retract_point(complex, sub, point, Fraction(args.t))
    return {
        "a": jsonio.fraction_to_json(result.a),
        "alpha_prime": jsonio.point_to_json(result.alpha_prime),
        "alpha_out": jsonio.point_to_json(result.alpha_out),
        "n_complex": jsonio.complex_to_json(result.n_complex),
        "n1_complex": jsonio.complex_to_json(result.n1_complex),
    }


def cmd_cross(args):
    left = jsonio.chain_from_json(_read_json(args.left))
    right = jsonio.chain_from_json(_read_json(args.right))
    return {"product": jsonio.product_chain_to_json(cross(left, right))}


def cmd_quotient(args):
    chain = jsonio.product_chain_from_json(_read_json(args.chain))
    complex = _load_complex(args.complex) if args.complex else None
    return {"gable_chain":
            jsonio.product_chain_to_json(quotient_project(chain, complex))}


def cmd_product_complex(args):
    complex = _load_complex(args.complex)
    result = product_complex(complex)
    return {
        "product": jsonio.complex_to_json(result.product),
        "orbit_counts": {
            str(k): len(result.gable.orbits_of_dim(k))
            for k in range(result.gable.dim + 1)
        },
        "diagonal_sub": {"orbits": [[jsonio._label_to_json(p) for p in rep]
                                    for rep in sorted(result.diagonal_sub)]},
    }


def cmd_roof(args):
    terms = jsonio.term_list_from_json(_read_json(args.terms))
    hat = roof(terms)
    return {"roof": jsonio.product_chain_to_json(hat)}


def _load_gable_and_regions(args, complex):
    result = product_complex(complex)
    regions = []
    for path in args.region or []:
        regions.append(jsonio.region_from_json(_read_json(path), result.gable))
    if not regions:
        regions = [DiagonalRegion.diagonal(result.gable)]
    return result.gable, regions


def cmd_roof_family(args):
    terms = jsonio.term_list_from_json(_read_json(args.terms))
    complex = _load_complex(args.complex)
    gable, regions = _load_gable_and_regions(args, complex)
    if len(regions) == 1:
        hat = roof(terms)
        res = relative_cycle_class(hat, gable, regions[0])
        return {
            "is_relative_cycle": res.is_relative_cycle,
            "class": list(res.class_coordinates or ()),
            "factors": _factors_json(res.factors) if res.factors else None,
        }
    fam = roof_family(terms, gable, regions)
    return {
        "classes": [list(c) for c in fam.classes],
        "factors": [_factors_json(f) for f in fam.factors],
        "compatible": fam.compatible,
        "level_compatibility": list(fam.level_compatibility),
    }


def cmd_fundamental_check(args):
    complex = _load_complex(args.complex)
    if args.terms:
        terms = jsonio.term_list_from_json(_read_json(args.terms))
    else:
        terms = fundamental_cycle(complex)
    report = fundamental_roof_check(complex, terms)
    return {
        "fundamental": jsonio.term_list_to_json(terms),
        "dim": report.dim,
        "is_relative_cycle": report.is_relative_cycle,
        "boundary_symbols_checked": report.boundary_symbols_checked,
        "support_matches": report.support_matches,
        "support_count": report.support_count,
        "expected_count": report.expected_count,
        "coefficients_unit": report.coefficients_unit,
        "ok": report.ok,
    }


def cmd_nerve(args):
    ground = jsonio.ground_from_json(_read_json(args.ground))
    cover = jsonio.cover_from_json(_read_json(args.cover))
    nv = nerve(ground, cover)
    out = {"nerve": jsonio.complex_to_json(nv.complex),
           "relative_subnerve": jsonio.complex_to_json(nv.sub)}
    if args.k is not None:
        factors, _ = homology(nv.pair, args.k)
        out["factors"] = _factors_json(factors)
    return out


def cmd_refine(args):
    c1 = jsonio.cover_from_json(_read_json(args.cover))
    c2 = jsonio.cover_from_json(_read_json(args.cover2))
    refined, w1, w2 = common_refinement(c1, c2)
    return {"cover": jsonio.cover_to_json(refined),
            "witness_to_first": w1.as_dict(),
            "witness_to_second": w2.as_dict()}


def cmd_project(args):
    ground = jsonio.ground_from_json(_read_json(args.ground))
    fine = jsonio.cover_from_json(_read_json(args.cover))
    coarse = jsonio.cover_from_json(_read_json(args.coarse))
    proj = projection(ground, fine, coarse)
    out = {"vertex_map": dict(sorted(proj.vertex_map.items())),
           "witness": proj.witness.as_dict()}
    if args.k is not None:
        morphism = induced_homology_map(
            proj.vertex_map, proj.source.pair, proj.target.pair, args.k)
        out["induced_matrix"] = jsonio.matrix_to_json(morphism.matrix)
        out["source_factors"] = _factors_json(invariant_factors(morphism.source))
        out["target_factors"] = _factors_json(invariant_factors(morphism.target))
    return out


def cmd_cech(args):
    ground = jsonio.ground_from_json(_read_json(args.ground))
    tower = jsonio.tower_from_json(_read_json(args.tower))
    result = cech_homology(ground, tower, args.k)
    return {
        "factors": _factors_json(invariant_factors(result.group)),
        "system": jsonio.system_to_json(result.system),
    }


def cmd_limit(args):
    system = jsonio.system_from_json(_read_json(args.system))
    result = inverse_limit(system)
    return {
        "factors": _factors_json(invariant_factors(result.limit)),
        "limit": jsonio.group_to_json(result.limit),
        "basis": [
            {str(label): list(vec) for label, vec in el.components.items()}
            for el in result.basis
        ],
    }


def cmd_cofinal(args):
    system = jsonio.system_from_json(_read_json(args.system))
    subset = [s.strip() for s in args.subset.split(",") if s.strip()]
    by_name = {str(e): e for e in system.poset.elements}
    subset = [by_name[s] for s in subset]
    klass = cofinality_class(system.poset, subset)
    out = {"cofinality": klass}
    if args.compare:
        comp = restricted_limit_compare(system, subset)
        out["full_factors"] = _factors_json(invariant_factors(comp.full.limit))
        out["restricted_factors"] = _factors_json(
            invariant_factors(comp.restricted.limit))
        out["comparison_matrix"] = jsonio.matrix_to_json(comp.comparison.matrix)
        out["is_iso"] = comp.is_iso
    return out


def cmd_verify(args):
    report = run_suite(args.suite, seed=args.seed, jobs=args.jobs,
                       trials=args.trials, max_k=args.max_k)
    return report.to_json()


def _contains_dict(value):
    if isinstance(value, dict):
        return True
    if isinstance(value, list):
        return any(_contains_dict(v) for v in value)
    return False


def _render_text(data, indent=0):
    import json as _json

    pad = "  " * indent
    lines = []
    if isinstance(data, dict):
        for key in sorted(data):
            value = data[key]
            if isinstance(value, dict):
                lines.append("%s%s:" % (pad, key))
                lines.extend(_render_text(value, indent + 1))
            elif isinstance(value, list):
                if _contains_dict(value):
                    lines.append("%s%s:" % (pad, key))
                    lines.extend(_render_text(value, indent + 1))
                else:
                    lines.append("%s%s: %s" % (pad, key, _json.dumps(value)))
            else:
                lines.append("%s%s: %s" % (pad, key, value))
    elif isinstance(data, list):
        for value in data:
            if isinstance(value, (dict, list)) and _contains_dict(value):
                lines.append("%s-" % pad)
                lines.extend(_render_text(value, indent + 1))
            elif isinstance(value, list):
                lines.append("%s- %s" % (pad, _json.dumps(value)))
            else:
                lines.append("%s- %s" % (pad, value))
    else:
        lines.append("%s%s" % (pad, data))
    return lines


def build_parser():
    parser = argparse.ArgumentParser(
        prog="gable",
        description="Exact-arithmetic simplicial homology, shuffle products, "
                    "roof maps, nerve towers and inverse limits.",
    )
    parser.add_argument("--out", choices=("json", "text"), default="text")
    parser.add_argument("--timing", action="store_true",
                        help="include wall-clock timing in the report")
    sub = parser.add_subparsers(dest="command", required=True)

    def add(name, fn, **arguments):
        p = sub.add_parser(name)
        for flag, opts in arguments.items():
            p.add_argument(flag, **opts)
        p.set_defaults(fn=fn)
        return p

    add("homology", cmd_homology,
        **{"--complex": dict(default=None), "--sub": dict(default=None),
           "--pair": dict(default=None),
           "--k": dict(type=int, required=True),
           "--reduced": dict(action="store_true")})
    add("subdivide", cmd_subdivide,
        **{"--complex": dict(required=True), "--sub": dict(default=None),
           "--check": dict(action="store_true")})
    add("cone", cmd_cone,
        **{"--complex": dict(default=None), "--sub": dict(default=None),
           "--pair": dict(default=None)})
    add("retract", cmd_retract,
        **{"--complex": dict(required=True), "--sub": dict(required=True),
           "--point": dict(required=True), "--t": dict(required=True)})
    add("cross", cmd_cross,
        **{"--left": dict(required=True), "--right": dict(required=True)})
    add("quotient", cmd_quotient,
        **{"--chain": dict(required=True), "--complex": dict(default=None)})
    add("product-complex", cmd_product_complex,
        **{"--complex": dict(required=True)})
    add("roof", cmd_roof, **{"--terms": dict(required=True)})
    add("roof-family", cmd_roof_family,
        **{"--terms": dict(required=True), "--complex": dict(required=True),
           "--region": dict(action="append", default=None)})
    add("fundamental-check", cmd_fundamental_check,
        **{"--complex": dict(required=True), "--terms": dict(default=None)})
    add("nerve", cmd_nerve,
        **{"--ground": dict(required=True), "--cover": dict(required=True),
           "--k": dict(type=int, default=None)})
    add("refine", cmd_refine,
        **{"--cover": dict(required=True), "--cover2": dict(required=True)})
    add("project", cmd_project,
        **{"--ground": dict(required=True), "--cover": dict(required=True),
           "--coarse": dict(required=True), "--k": dict(type=int, default=None)})
    add("cech", cmd_cech,
        **{"--ground": dict(required=True), "--tower": dict(required=True),
           "--k": dict(type=int, required=True)})
    add("limit", cmd_limit, **{"--system": dict(required=True)})
    add("cofinal", cmd_cofinal,
        **{"--system": dict(required=True), "--subset": dict(required=True),
           "--compare": dict(action="store_true")})
    verify = sub.add_parser("verify")
    verify.add_argument("suite")
    verify.add_argument("--seed", type=int,
                        default=int(os.environ.get("GABLE_SEED", "0")))
    verify.add_argument("--jobs", type=int, default=1)
    verify.add_argument("--trials", type=int, default=None)
    verify.add_argument("--max-k", dest="max_k", type=int, default=None)
    verify.set_defaults(fn=cmd_verify)
    return parser


def main(argv=None):
    parser = build_parser()
    args = parser.parse_args(argv)
    started = time.monotonic()
    try:
        result = args.fn(args)
    except GableError as exc:
        report = {
            "command": args.command,
            "error": {"message": str(exc),
                      "witness": repr(exc.witness) if exc.witness is not None
                      else None},
        }
        _emit(report, args)
        return 2
    except FileNotFoundError as exc:
        report = {"command": args.command,
                  "error": {"message": str(exc), "witness": None}}
        _emit(report, args)
        return 2
    report = {"command": args.command, "result": result}
    if args.timing:
        report["timing_seconds"] = round(time.monotonic() - started, 6)
    _emit(report, args)
    if args.command == "verify" and not result.get("passed", True):
        return 1
    return 0


def _emit(report, args):
    if args.out == "json":
        sys.stdout.write(jsonio.dumps(report))
    else:
        if "error" in report:
            sys.stdout.write("error: %s\n" % report["error"]["message"])
            if report["error"]["witness"]:
                sys.stdout.write("witness: %s\n" % report["error"]["witness"])
        else:
            for line in _render_text(report):
                sys.stdout.write(line + "\n")


if __name__ == "__main__":
    sys.exit(main())
