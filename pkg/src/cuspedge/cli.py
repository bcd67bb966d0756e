"""Command-line front-end.

Exit codes: 0 success, 1 a selftest driver found failures, 2 unreadable
input or bad options, 3 germ is not a submersion, 4 edge is not a cuspidal
edge (b03 = 0), 5 invalid moduli or non-generic form parameter.
Reports go to stdout as JSON with sorted keys; geometry files are written
to the ``--out`` directory.
"""

from __future__ import annotations

import argparse
import json
import random
import sys
from fractions import Fraction
from pathlib import Path

from .jetalg import JetError, JetMap, parse_jet
from .recognize import EdgeCoefficients, NotACuspidalEdge, NotASubmersion
from . import reports, selftest
from .geomviz import (AB_LABELS, GenericityError, InvalidModuli, Type7Moduli, ab_stratification,
                      branch_counts, discriminant_surface, identity_checks, polylines_to_csv,
                      profile_curves, region_summary, type7_strata)
from .geomviz.strata import residual_decay

EXIT_OK, EXIT_PARSE, EXIT_SUBMERSION, EXIT_EDGE, EXIT_MODULI = 0, 2, 3, 4, 5


class InputError(ValueError):
    pass


# ---------------------------------------------------------------------------
# input parsing


def _rational(text) -> Fraction:
    try:
        return Fraction(str(text))
    except (ValueError, ZeroDivisionError) as exc:
        raise InputError(f"not a rational: {text!r}") from exc


def _vector(text) -> tuple:
    parts = text if isinstance(text, (list, tuple)) else str(text).split(",")
    if len(parts) != 3:
        raise InputError("direction needs three comma-separated rationals")
    return tuple(_rational(p) for p in parts)


def _load_json(path):
    try:
        with open(path) as fh:
            return json.load(fh)
    except (OSError, json.JSONDecodeError) as exc:
        raise InputError(f"cannot read {path}: {exc}") from exc


def read_germ(path, default_degree: int = 10) -> JetMap:
    """A germ file holds Jet JSON, ``{"components": [...]}``, or ``{"expr"|"exprs": ..., "deg": n}``."""
    data = _load_json(path)
    try:
        if isinstance(data, dict) and ("expr" in data or "exprs" in data):
            exprs = data.get("exprs") or [data["expr"]]
            deg = int(data.get("deg", default_degree))
            return JetMap(parse_jet(e, deg) for e in exprs)
        return JetMap.from_json(data)
    except (JetError, KeyError, TypeError, ValueError, SyntaxError, IndexError) as exc:
        raise InputError(f"cannot parse germ: {exc}") from exc


def read_edge(path) -> EdgeCoefficients:
    data = _load_json(path)
    try:
        return EdgeCoefficients.from_json(data)
    except (TypeError, ValueError, ZeroDivisionError) as exc:
        raise InputError(f"cannot parse edge coefficients: {exc}") from exc


# ---------------------------------------------------------------------------
# output


def _dump(obj) -> str:
    return json.dumps(obj, indent=2, sort_keys=True, default=str) + "\n"


def _emit(args, name: str, obj):
    text = _dump(obj)
    sys.stdout.write(text)
    if args.out:
        _write(args, name, text)


def _write(args, name: str, text: str) -> Path:
    out = Path(args.out or ".")
    out.mkdir(parents=True, exist_ok=True)
    path = out / name
    path.write_text(text)
    return path


# ---------------------------------------------------------------------------
# commands


def cmd_classify_function(args):
    g = read_germ(args.germ)
    if len(g) != 1:
        raise InputError("a function germ file has one component")
    _emit(args, "classify-function.json", reports.function_report(g))


def cmd_classify_map(args):
    g = read_germ(args.germ)
    if len(g) != 2:
        raise InputError("a map germ file has two components")
    _emit(args, "classify-map.json", reports.map_report(g))


def cmd_classify_edge(args):
    E = read_edge(args.edge)
    if args.sweep:
        rows, counts = reports.sweep_report(E, int(args.sweep))
        lines = [",".join(reports.SWEEP_HEADER)] + [",".join(r) for r in rows]
        path = _write(args, "sweep.csv", "\n".join(lines) + "\n")
        _emit(args, "classify-edge.json", {"sweep": int(args.sweep), "rows": len(rows),
                                           "csv": str(path), "regions": counts})
        return
    if not args.direction:
        raise InputError("classify-edge needs --direction or --sweep")
    _emit(args, "classify-edge.json", reports.direction_report(E, _vector(args.direction)))


def cmd_invariants(args):
    _emit(args, "invariants.json", reports.invariants_report(read_edge(args.edge)))


def cmd_transversal(args):
    _emit(args, "transversal.json", reports.transversal_report(read_germ(args.germ), int(args.degree)))


def cmd_determinacy(args):
    _emit(args, "determinacy.json", reports.determinacy_report(read_germ(args.germ)))


def cmd_discriminant(args):
    mesh = discriminant_surface(args.form, int(args.grid), _rational(args.extent),
                                int(args.sign), _rational(args.a))
    path = _write(args, f"discriminant_{args.form}.obj", mesh.to_obj())
    sys.stdout.write(_dump({"form": args.form, "obj": str(path), "sheets": mesh.part_labels,
                            "vertices": len(mesh.vertices)}))


def cmd_profile(args):
    E = read_edge(args.edge)
    window = tuple(float(x) for x in args.window)
    lines = profile_curves(E, _vector(args.direction), window, int(args.resolution))
    path = _write(args, "profile.csv", polylines_to_csv(lines))
    sys.stdout.write(_dump({"csv": str(path), "polylines": [[pl.label, len(pl)] for pl in lines]}))


def _moduli(args) -> Type7Moduli:
    try:
        return Type7Moduli(*(_rational(getattr(args, k)) for k in "abcde"), sign=int(args.sign))
    except InputError as exc:
        raise InvalidModuli(str(exc)) from exc


def cmd_strata(args):
    m = _moduli(args)
    dropped = []
    curves = type7_strata(m, dropped)
    report = {"moduli": m.to_json(),
              "strata": [c.to_json() for c in curves],
              "dropped": [{"name": d.name, "root": d.root, "reason": d.reason} for d in dropped],
              "rootCounts": branch_counts(m.a, m.b)}
    if args.decay:
        dec = {}
        for name in ("lips_beaks", "type3", "double_point_fold"):
            try:
                r = residual_decay(m, name)
                dec[name] = {"slope": r.slope, "converged": r.converged}
            except InvalidModuli as exc:
                dec[name] = {"skipped": str(exc)}
        report["residualDecay"] = dec
    _emit(args, "strata.json", report)


def cmd_abplane(args):
    bounds = tuple(float(x) for x in args.bounds)
    lines = ab_stratification(bounds, int(args.resolution))
    files = {}
    for label in AB_LABELS:
        mine = [pl for pl in lines if pl.label == label]
        files[label] = str(_write(args, f"abplane_{label}.csv", polylines_to_csv(mine)))
    sys.stdout.write(_dump({"files": files, "regions": region_summary(tuple(args.bounds))}))


def cmd_identities(args):
    _emit(args, "identities.json", [r.to_json() for r in identity_checks()])


def cmd_selftest(args):
    rng = random.Random(args.seed)
    res = {"functionInvariance": selftest.function_invariance(rng, int(args.count)).to_json(),
           "mapInvariance": selftest.map_invariance(rng, max(1, int(args.count) // 2)).to_json(),
           "crossOracle": selftest.cross_oracle(rng, 5 * int(args.count)).to_json()}
    _emit(args, "selftest.json", res)
    if any(r["failures"] for r in res.values()):
        return 1
    return EXIT_OK


# ---------------------------------------------------------------------------
# argument handling


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="cuspedge", description="Singularities of maps on a cuspidal edge.")
    p.add_argument("--out", help="directory for output files")
    p.add_argument("--job", help="JSON job file whose keys override the flags")
    p.add_argument("--seed", type=int, default=0, help="seed for randomized drivers")
    sub = p.add_subparsers(dest="command")

    def add(name, fn, help_):
        sp = sub.add_parser(name, help=help_)
        sp.set_defaults(func=fn)
        return sp

    for name, fn, what in (("classify-function", cmd_classify_function, "classify a function germ"),
                           ("classify-map", cmd_classify_map, "classify a map germ"),
                           ("determinacy", cmd_determinacy, "determinacy certificate of a germ")):
        add(name, fn, what).add_argument("germ", nargs="?")
    sp = add("transversal", cmd_transversal, "complete transversal at one degree")
    sp.add_argument("germ", nargs="?")
    sp.add_argument("--degree", type=int, default=2)
    sp = add("classify-edge", cmd_classify_edge, "height and projection labels of an edge")
    sp.add_argument("edge", nargs="?")
    sp.add_argument("--direction")
    sp.add_argument("--sweep", type=int)
    add("invariants", cmd_invariants, "geometric invariants of an edge").add_argument("edge", nargs="?")
    sp = add("discriminant", cmd_discriminant, "discriminant surface mesh (OBJ)")
    sp.add_argument("--form", default="FnVk3")
    sp.add_argument("--grid", type=int, default=16)
    sp.add_argument("--extent", default="1")
    sp.add_argument("--sign", type=int, default=1)
    sp.add_argument("--a", default="1")
    sp = add("profile", cmd_profile, "singular image and proper profile (CSV)")
    sp.add_argument("edge", nargs="?")
    sp.add_argument("--direction", default="0,1,0")
    sp.add_argument("--window", nargs=4, default=["-0.5", "0.5", "-0.5", "0.5"])
    sp.add_argument("--resolution", type=int, default=512)
    sp = add("strata", cmd_strata, "Type 7 strata (JSON)")
    for k in "abcde":
        sp.add_argument(f"--{k}", default="0")
    sp.add_argument("--sign", type=int, default=1)
    sp.add_argument("--decay", action="store_true", help="also follow the strata numerically")
    sp = add("abplane", cmd_abplane, "stratification of the moduli plane (CSV)")
    sp.add_argument("--bounds", nargs=4, default=["-1", "1", "-1", "1"])
    sp.add_argument("--resolution", type=int, default=400)
    add("identities", cmd_identities, "discriminant identities")
    sp = add("selftest", cmd_selftest, "randomized invariance and cross-oracle drivers")
    sp.add_argument("--count", type=int, default=4)
    return p


def _apply_job(parser, args, argv):
    job = _load_json(args.job)
    if not isinstance(job, dict):
        raise InputError("job file must hold a JSON object")
    if "command" in job and args.command is None:
        args = parser.parse_args(list(argv) + [job["command"]])
    for k, v in job.items():
        if k == "command":
            continue
        setattr(args, k.replace("-", "_"), v)
    return args


def main(argv=None) -> int:
    argv = list(sys.argv[1:] if argv is None else argv)
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
        if args.job:
            args = _apply_job(parser, args, argv)
        if not getattr(args, "command", None):
            parser.print_help(sys.stderr)
            return EXIT_PARSE
        for need in ("germ", "edge"):
            if hasattr(args, need) and getattr(args, need) is None:
                raise InputError(f"{args.command} needs a {need} file")
        code = args.func(args)
        return EXIT_OK if code is None else code
    except SystemExit as exc:
        return int(exc.code or 0)
    except InputError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_PARSE
    except NotASubmersion as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_SUBMERSION
    except NotACuspidalEdge as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_EDGE
    except (InvalidModuli, GenericityError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_MODULI
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_PARSE


if __name__ == "__main__":
    sys.exit(main())
