"""Command-line front end.

Payloads (chirotope text, point JSON) and reports (JSON) go to stdout, a short
human summary goes to stderr.  Exit status: 0 success, 1 validation failure,
2 usage error.
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

from .core import Chirotope, check_chirotope_axioms
from .exact import parse_rational
from .extension import ExtensionError, fixed_point_extension
from .faces import (
    cocircuit_pattern_check,
    cocircuits,
    covector_split_check,
    covectors,
    sv_from_string,
    sv_to_string,
)
from .geometry import PointConfig, chirotope_from_points, example_config, gap_construction, parse_example_name
from .symmetry import Permutation, SearchCapExceeded, classify_rank4, describe_symmetries, rotation_group


def _read(path: str) -> str:
    return sys.stdin.read() if path == "-" else Path(path).read_text()


def _load_chirotope(path: str) -> Chirotope:
    return Chirotope.from_string(_read(path))


def _emit(payload: str, out: str | None) -> None:
    if out:
        Path(out).write_text(payload)
    else:
        sys.stdout.write(payload if payload.endswith("\n") else payload + "\n")


def _report(data: dict) -> None:
    sys.stdout.write(json.dumps(data, sort_keys=True) + "\n")


def _note(msg: str) -> None:
    print(msg, file=sys.stderr)


def _parse_point(text: str) -> list:
    return [parse_rational(x) for x in text.replace(",", " ").split()]


# subcommands

def cmd_from_points(args) -> int:
    cfg = PointConfig.from_json(_read(args.points))
    chi = chirotope_from_points(cfg)
    _emit(chi.to_string(), args.output)
    _note(f"rank {chi.r} chirotope on {chi.n} elements, {len(chi.bases())} bases")
    return 0


def cmd_axioms(args) -> int:
    chi = _load_chirotope(args.chirotope)
    rep = check_chirotope_axioms(chi, args.mode)
    _report({"mode": args.mode, "passed": rep.passed, "violations": [list(v) for v in rep.violations]})
    _note(f"{args.mode} axiom check: {'passed' if rep.passed else 'FAILED'}")
    return 0 if rep.passed else 1


def cmd_faces(args) -> int:
    chi = _load_chirotope(args.chirotope)
    cocs = cocircuits(chi)
    data = {"cocircuits": [sv_to_string(c) for c in cocs], "n_cocircuits": len(cocs)}
    if args.covectors:
        cov = covectors(chi, cap=args.cap)
        data["covectors"] = [sv_to_string(v) for v in cov]
        data["n_covectors"] = len(cov)
    _report(data)
    _note(f"{len(cocs)} cocircuits" + (f", {data['n_covectors']} covectors" if args.covectors else ""))
    return 0


def cmd_symmetry(args) -> int:
    chi = _load_chirotope(args.chirotope)
    d = describe_symmetries(chi, rotations_only=args.rotations_only)
    _report(d.to_json())
    _note(f"symmetry group of order {d.order}: {d.name}")
    return 0


def cmd_classify(args) -> int:
    chi = _load_chirotope(args.chirotope)
    d = classify_rank4(chi, cap=args.cap)
    _report(d.to_json())
    _note(f"rotation group {d.name} (order {d.order}), allowed family: {d.allowed}")
    return 0 if d.allowed else 1


def cmd_extend(args) -> int:
    chi = _load_chirotope(args.chirotope)
    ext, e = fixed_point_extension(chi)
    rots = rotation_group(chi)
    if args.output:
        Path(args.output).write_text(ext.to_string())
    _report(
        {
            "chirotope": ext.to_string(),
            "new_element": e,
            "rotations_checked": len(rots),
            "rotations_preserved": True,
        }
    )
    _note(f"extended by element {e}; {len(rots)} rotations preserved")
    return 0


def cmd_contract(args) -> int:
    chi = _load_chirotope(args.chirotope)
    res = chi.contract(args.element)
    _emit(res.to_string(), args.output)
    _note(f"contracted element {args.element}: rank {res.r} on {res.n} elements")
    return 0


def cmd_gap(args) -> int:
    cfg = PointConfig.from_json(_read(args.points))
    sigma = Permutation.parse(args.perm)
    q1 = _parse_point(args.q1) if args.q1 else None
    q2 = _parse_point(args.q2) if args.q2 else None
    res = gap_construction(cfg, sigma, q1, q2)
    data = {
        "points": json.loads(res.config.to_json()),
        "tau": res.tau.one_line(),
        "tau_kind": res.tau_kind,
        "m_symmetry": res.tau_is_m_symmetry,
        "axis_values": res.axis_values,
        "q_generic": list(res.q_generic),
        "not_parallel": res.not_parallel,
        "passed": res.passed,
    }
    if args.output:
        Path(args.output).write_text(res.config.to_json() + "\n")
    _report(data)
    _note(f"{res.config.n} points; tau is {'an' if res.tau_is_m_symmetry else 'NOT an'} M-symmetry")
    return 0 if res.passed else 1


def cmd_example(args) -> int:
    name, n = parse_example_name(args.name)
    if args.size is not None:
        n = args.size
    cfg = example_config(name, n)
    _emit(cfg.to_json() + "\n", args.output)
    _note(f"{name}: {cfg.n} points in dimension {cfg.dim} over {cfg.field}")
    return 0


def cmd_pattern_check(args) -> int:
    chi = _load_chirotope(args.chirotope)
    if args.order:
        order = [int(x) for x in args.order.replace(",", " ").split()]
        ok = cocircuit_pattern_check(chi, order, args.element)
        data = {"check": "edge_cocircuits", "order": order, "element": args.element, "holds": ok}
    elif args.covector:
        vec = sv_from_string(args.covector)
        ok = covector_split_check(chi, vec, args.element)
        data = {"check": "covector_split", "covector": args.covector, "element": args.element, "holds": ok}
    else:
        raise ValueError("pattern-check needs --order or --covector")
    _report(data)
    _note(f"pattern {'holds' if ok else 'VIOLATED'}")
    return 0 if ok else 1


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="omsym", description="Exact oriented-matroid symmetry toolkit.")
    p.add_argument("--seed-free", action="store_true", help="accepted for scripts; every search is deterministic")
    sub = p.add_subparsers(dest="command", required=True)

    s = sub.add_parser("from-points", help="points JSON -> chirotope file")
    s.add_argument("points")
    s.add_argument("-o", "--output")
    s.set_defaults(func=cmd_from_points)

    s = sub.add_parser("axioms", help="validate the chirotope axioms")
    s.add_argument("chirotope")
    s.add_argument("--mode", choices=("full", "screened"), default="full")
    s.set_defaults(func=cmd_axioms)

    s = sub.add_parser("faces", help="cocircuits and optionally covectors")
    s.add_argument("chirotope")
    s.add_argument("--covectors", action="store_true")
    s.add_argument("--cap", type=int, default=200_000, help="covector count cap (default 200000)")
    s.set_defaults(func=cmd_faces)

    s = sub.add_parser("symmetry", help="symmetry group report")
    s.add_argument("chirotope")
    s.add_argument("--rotations-only", action="store_true")
    s.set_defaults(func=cmd_symmetry)

    s = sub.add_parser("classify", help="rotation group of a rank-4 chirotope")
    s.add_argument("chirotope")
    s.add_argument("--cap", type=int, default=2_000_000, help="search node cap (default 2000000)")
    s.set_defaults(func=cmd_classify)

    s = sub.add_parser("extend", help="fixed-point extension of a matroid polytope")
    s.add_argument("chirotope")
    s.add_argument("-o", "--output")
    s.set_defaults(func=cmd_extend)

    s = sub.add_parser("contract", help="contract one element")
    s.add_argument("chirotope")
    s.add_argument("element", type=int)
    s.add_argument("-o", "--output")
    s.set_defaults(func=cmd_contract)

    s = sub.add_parser("gap", help="stack a planar configuration and test the lifted permutation")
    s.add_argument("points")
    s.add_argument("--perm", required=True, help="one-line images, e.g. '2 3 1'")
    s.add_argument("--q1")
    s.add_argument("--q2")
    s.add_argument("-o", "--output")
    s.set_defaults(func=cmd_gap)

    s = sub.add_parser("example", help="write a named example configuration")
    s.add_argument("name", help="paper8, P2, P3, pyramid5, bipyramid3, simplex, cube, icosahedron, polygon6")
    s.add_argument("size", nargs="?", type=int)
    s.add_argument("-o", "--output")
    s.set_defaults(func=cmd_example)

    s = sub.add_parser("pattern-check", help="sign-run patterns of rank-3 alternating matroids")
    s.add_argument("chirotope")
    s.add_argument("--order", help="alternating order of a subset, e.g. '1 2 3 4'")
    s.add_argument("--covector", help="sign vector such as '0+-+'")
    s.add_argument("--element", type=int, required=True)
    s.set_defaults(func=cmd_pattern_check)
    return p


def run(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except (ValueError, ExtensionError, SearchCapExceeded, OSError) as exc:
        _report({"error": str(exc), "type": type(exc).__name__, "witness": _witness(exc)})
        _note(f"error: {exc}")
        return 1


def _witness(exc):
    w = getattr(exc, "witness", None)
    return json.loads(json.dumps(w, default=str)) if w is not None else None


def main() -> None:
    sys.exit(run())
