"""Command-line interface: ``tropkit <subcommand> ...``."""
from __future__ import annotations

import argparse
import json
import math
import random
import sys
from fractions import Fraction
from pathlib import Path
from typing import Any, Optional, Sequence

from . import fan, floor, graphs, io, patchwork, plane, reproduce
from ._exact import fraction_str
from .core import PreconditionError, dequantized_add, factor, roots
from .parsing import ParseError, parse_univariate


class InputError(Exception):
    """Malformed input on the command line or in a file (exit code 2)."""


def _emit(obj: Any, out) -> None:
    out.write(json.dumps(obj, indent=2, sort_keys=False) + "\n")


def _load(path: str) -> Any:
    try:
        return json.loads(Path(path).read_text(encoding="utf-8"))
    except json.JSONDecodeError as exc:
        raise InputError(f"{path}: invalid JSON ({exc})") from exc
    except OSError as exc:
        raise InputError(f"{path}: {exc.strerror}") from exc


def _poly(text: str) -> plane.BivariatePoly:
    return plane.BivariatePoly.parse(text)


def _write(path: str, text: str) -> None:
    Path(path).write_text(text, encoding="utf-8")


# ---------------------------------------------------------------- commands

def cmd_roots(args, out) -> int:
    p = parse_univariate(args.poly)
    _emit([{"root": str(r.location), "order": r.order} for r in roots(p)], out)
    return 0


def cmd_factor(args, out) -> int:
    f = factor(parse_univariate(args.poly))
    if args.format == "json":
        _emit({"leading": fraction_str(f.leading),
               "factors": [{"root": str(r), "multiplicity": k} for r, k in f.factors]}, out)
    else:
        out.write(str(f) + "\n")
    return 0


def cmd_dequant(args, out) -> int:
    if args.samples:
        rng = random.Random(args.seed)
        worst = 0.0
        for _ in range(args.samples):
            x, y = rng.uniform(-50, 50), rng.uniform(-50, 50)
            t = math.exp(rng.uniform(0.01, 5))
            v = dequantized_add(x, y, t)
            lo, hi = max(x, y), max(x, y) + math.log(2) / math.log(t)
            worst = max(worst, lo - v, v - hi)
        _emit({"samples": args.samples, "max_violation": worst, "ok": worst <= args.tol}, out)
        return 0
    x, y, t = float(args.x), float(args.y), float(args.t)
    v = dequantized_add(x, y, t)
    _emit({"value": v, "max": max(x, y), "bound": max(x, y) + math.log(2) / math.log(t)}, out)
    return 0


def cmd_curve(args, out) -> int:
    C = plane.tropical_curve(_poly(args.poly))
    if args.svg:
        _write(args.svg, io.curve_svg(C))
    _emit(io.curve_to_json(C), out)
    return 0


def cmd_subdivision(args, out) -> int:
    _emit(io.subdivision_to_json(plane.dual_subdivision(_poly(args.poly))), out)
    return 0


def cmd_intersect(args, out) -> int:
    C, D = plane.tropical_curve(_poly(args.poly1)), plane.tropical_curve(_poly(args.poly2))
    _emit(io.intersection_to_json(plane.stable_intersection(C, D, perturb=args.perturb)), out)
    return 0


def _parse_twists(text: str) -> list[int]:
    twists = []
    for item in filter(None, (s.strip() for s in text.split(","))):
        if not item.startswith("e") or not item[1:].isdigit():
            raise InputError(f"twist {item!r} is not of the form e<k>")
        twists.append(int(item[1:]))
    return twists


def cmd_patchwork(args, out) -> int:
    C = plane.tropical_curve(_poly(args.poly))
    if args.signs:
        T = patchwork.twists_from_signs(C, io.signs_from_json(_load(args.signs)))
    else:
        T = _parse_twists(args.twists or "")
    R = patchwork.patchwork(C, T)
    if args.svg:
        _write(args.svg, io.patchwork_svg(C, R))
    data = io.patchwork_to_json(R)
    data["twists"] = sorted(T)
    _emit(data, out)
    return 0


def cmd_floor(args, out) -> int:
    if args.action == "enumerate":
        counts = floor.marked_counts(args.d, args.g, args.workers)
        if args.json:
            _emit([{"diagram": m.diagram.to_json(), "markings": m.markings} for m in counts], out)
        else:
            for m in counts:
                edges = " ".join(f"{s}->{t}:{w}" for s, t, w in m.diagram.edges) or "-"
                out.write(f"edges {edges}  legs {list(m.diagram.legs)}  markings {m.markings}\n")
        return 0
    G = floor.refined_invariant(args.d, args.g, args.workers)
    if args.at is not None:
        q = args.at.split("=")[-1].strip()
        if q not in ("1", "-1"):
            raise InputError("--at accepts q=1 or q=-1")
        value = G.at_one() if q == "1" else G.at_minus_one()
        if args.json:
            _emit({"q": int(q), "value": value if isinstance(value, int) else str(value)}, out)
        else:
            out.write(f"{value}\n")
    elif args.json:
        _emit(G.to_json(), out)
    else:
        out.write(f"{G}\n")
    return 0


def _fan_curve(path: str) -> fan.FanCurve:
    return fan.FanCurve.from_json(_load(path))


def cmd_fan(args, out) -> int:
    if args.action == "degree":
        if len(args.files) != 1:
            raise InputError("fan degree takes one curve file")
        _emit(fan.fan_degree(_fan_curve(args.files[0])), out)
        return 0
    files = list(args.files)
    n = args.plane
    if n is None:
        if len(files) != 3 or not files[0].isdigit():
            raise InputError("fan intersect needs --plane N (or a leading N) and two curve files")
        n = int(files.pop(0))
    if len(files) != 2:
        raise InputError("fan intersect takes two curve files")
    P = fan.FanPlane(n)
    _emit(fan.local_intersection(P, _fan_curve(files[0]), _fan_curve(files[1])), out)
    return 0


def cmd_matroid(args, out) -> int:
    M = fan.Matroid.from_json(_load(args.file))
    F = fan.matroid_fan(M)
    data: dict[str, Any] = {"fan": F.to_json()}
    if args.check_balancing:
        data["balanced"] = fan.verify_balancing(F)
    if args.link:
        L = fan.fan_link(F)
        data["link"] = {
            "vertices": len(L.vertices),
            "edges": [list(e) for e in L.edges],
            "degrees": sorted(set(L.degrees().values())),
            "girth": L.girth(),
        }
    _emit(data, out)
    return 0


def cmd_graph(args, out) -> int:
    G = graphs.MetricGraph.from_json(_load(args.file))
    if args.action == "genus":
        try:
            _emit({"genus": graphs.genus(G)}, out)
        except graphs.DisconnectedGraphError as exc:
            _emit({"error": {"type": "disconnected", "message": str(exc), "genera": exc.genera}}, out)
            return 1
    elif args.action == "cohomology":
        H = graphs.curve_cohomology(G, open_model=args.open_model)
        _emit({f"h{p}{q}": v for (p, q), v in sorted(H.h.items())}, out)
    else:
        if args.vertex is not None:
            p: Any = args.vertex
        elif args.edge is not None:
            p = graphs.EdgePoint(args.edge, Fraction(args.t))
        else:
            raise InputError("graph modify needs --vertex V or --edge K --t T")
        _emit(graphs.elementary_modification(G, p).to_json(), out)
    return 0


def cmd_reproduce(args, out) -> int:
    data = reproduce.report(reproduce.reproduce(args.workers))
    _emit(data, out)
    return 0 if data["failed"] == 0 else 1


# ------------------------------------------------------------------ parser

def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="tropkit", description="Exact tropical geometry toolkit.")
    sub = ap.add_subparsers(dest="command", required=True)

    p = sub.add_parser("roots", help="roots of a univariate tropical polynomial")
    p.add_argument("poly")
    p.set_defaults(func=cmd_roots)

    p = sub.add_parser("factor", help="factor a univariate tropical polynomial")
    p.add_argument("poly")
    p.add_argument("--format", choices=("text", "json"), default="text")
    p.set_defaults(func=cmd_factor)

    p = sub.add_parser("dequant", help="dequantized addition and its bound")
    p.add_argument("x", nargs="?", default="0")
    p.add_argument("y", nargs="?", default="0")
    p.add_argument("t", nargs="?", default="2")
    p.add_argument("--samples", type=int, default=0, help="random check instead of a single value")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--tol", type=float, default=1e-12)
    p.set_defaults(func=cmd_dequant)

    p = sub.add_parser("curve", help="tropical plane curve of a polynomial")
    p.add_argument("poly")
    p.add_argument("--svg", metavar="PATH")
    p.set_defaults(func=cmd_curve)

    p = sub.add_parser("subdivision", help="dual subdivision of the Newton polygon")
    p.add_argument("poly")
    p.set_defaults(func=cmd_subdivision)

    p = sub.add_parser("intersect", help="stable intersection of two plane curves")
    p.add_argument("poly1")
    p.add_argument("poly2")
    p.add_argument("--perturb", action="store_true", help="shift the second curve generically")
    p.set_defaults(func=cmd_intersect)

    p = sub.add_parser("patchwork", help="combinatorial patchwork of a non-singular curve")
    p.add_argument("poly")
    g = p.add_mutually_exclusive_group()
    g.add_argument("--twists", help="comma-separated bounded edges, e.g. e3,e7")
    g.add_argument("--signs", metavar="FILE", help="JSON sign distribution on lattice points")
    p.add_argument("--svg", metavar="PATH")
    p.set_defaults(func=cmd_patchwork)

    p = sub.add_parser("floor", help="floor diagrams and refined invariants")
    p.add_argument("action", choices=("enumerate", "invariant"))
    p.add_argument("d", type=int)
    p.add_argument("g", type=int)
    p.add_argument("--json", action="store_true")
    p.add_argument("--at", help="evaluate at q=1 or q=-1")
    p.add_argument("--workers", type=int, default=None)
    p.set_defaults(func=cmd_floor)

    p = sub.add_parser("fan", help="fan curves in a plane fan")
    p.add_argument("action", choices=("degree", "intersect"))
    p.add_argument("--plane", type=int, default=None)
    p.add_argument("files", nargs="+")
    p.set_defaults(func=cmd_fan)

    p = sub.add_parser("matroid", help="matroid fans")
    p.add_argument("action", choices=("fan",))
    p.add_argument("file")
    p.add_argument("--check-balancing", action="store_true")
    p.add_argument("--link", action="store_true")
    p.set_defaults(func=cmd_matroid)

    p = sub.add_parser("graph", help="abstract tropical curves")
    p.add_argument("action", choices=("genus", "cohomology", "modify"))
    p.add_argument("file")
    p.add_argument("--open-model", action="store_true", help="allow open ends in cohomology")
    p.add_argument("--vertex", type=int)
    p.add_argument("--edge", type=int)
    p.add_argument("--t", default="1/2", help="position on the edge, measured from its first endpoint")
    p.set_defaults(func=cmd_graph)

    p = sub.add_parser("reproduce", help="compare against the golden table")
    p.add_argument("target", choices=("paper",))
    p.add_argument("--workers", type=int, default=None)
    p.set_defaults(func=cmd_reproduce)
    return ap


def run(argv: Optional[Sequence[str]] = None, out=None) -> int:
    out = out or sys.stdout
    args = build_parser().parse_args(argv)
    try:
        return args.func(args, out)
    except PreconditionError as exc:
        _emit({"error": {"type": "precondition", "message": str(exc)}}, out)
        return 1
    except (ParseError, InputError, ValueError, KeyError, TypeError) as exc:
        # malformed numbers or missing fields in input files land here too
        _emit({"error": {"type": "parse", "message": str(exc)}}, out)
        return 2


def main(argv: Optional[Sequence[str]] = None) -> None:
    sys.exit(run(argv))


if __name__ == "__main__":
    main()
