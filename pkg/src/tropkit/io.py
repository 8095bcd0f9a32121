"""JSON and SVG emitters for curves, subdivisions, intersections and patchworks.

Rationals are written as strings ``"p/q"`` (or ``"n"``) so that every value
round-trips losslessly.
"""
from __future__ import annotations

from fractions import Fraction
from typing import Mapping, Optional

from ._exact import fraction_str
from .core import PreconditionError
from .patchwork import PatchworkResult
from .plane import CurveEdge, DualSubdivision, IntersectionReport, PlaneCurve


def _q(x) -> str:
    return fraction_str(Fraction(x))


def _pt(p) -> list[str]:
    return [_q(c) for c in p]


# -------------------------------------------------------------------- curves

def curve_to_json(C: PlaneCurve) -> dict:
    edges = []
    for e in C.edges:
        if e.kind == "segment":
            edges.append({"v": list(e.vertices), "w": e.weight})
        elif e.kind == "ray":
            edges.append({"ray": {"v": e.vertices[0], "dir": list(e.direction)}, "w": e.weight})
        else:
            edges.append({"line": {"point": _pt(e.point), "dir": list(e.direction)}, "w": e.weight})
    return {"vertices": [_pt(v) for v in C.vertices], "edges": edges}


def curve_from_json(data: Mapping) -> PlaneCurve:
    verts = tuple(tuple(Fraction(str(c)) for c in v) for v in data["vertices"])
    edges = []
    for e in data["edges"]:
        w = int(e["w"])
        if "v" in e:
            a, b = (int(i) for i in e["v"])
            d = tuple(q - p for p, q in zip(verts[a], verts[b]))
            # primitive direction from the displacement
            scale = max(abs(c) for c in d)
            prim = _primitive_of(d) if scale else (0, 0)
            edges.append(CurveEdge("segment", w, prim, (a, b)))
        elif "ray" in e:
            edges.append(CurveEdge("ray", w, tuple(int(c) for c in e["ray"]["dir"]), (int(e["ray"]["v"]),)))
        elif "line" in e:
            pt = tuple(Fraction(str(c)) for c in e["line"]["point"])
            edges.append(CurveEdge("line", w, tuple(int(c) for c in e["line"]["dir"]), (), pt))
        else:
            raise PreconditionError(f"unknown edge record {e}")
    return PlaneCurve(verts, tuple(edges))


def _primitive_of(d) -> tuple[int, int]:
    from math import gcd, lcm

    den = lcm(*(Fraction(c).denominator for c in d))
    ints = [int(Fraction(c) * den) for c in d]
    g = gcd(*ints)
    return tuple(c // g for c in ints)


def subdivision_to_json(S: DualSubdivision) -> dict:
    return {
        "dim": S.dim,
        "newton": [list(p) for p in S.newton],
        "lift": [{"p": list(p), "c": _q(c)} for p, c in sorted(S.terms.items())],
        "cells": [
            {"polygon": [list(p) for p in c.polygon], "points": [list(p) for p in c.points],
             "area": _q(c.area)}
            for c in S.cells2
        ],
        "edges": [[list(p), list(q)] for p, q in S.cells1],
        "vertices": [list(p) for p in S.cells0],
    }


def intersection_to_json(R: IntersectionReport) -> dict:
    return {
        "transverse": R.transverse,
        "total": R.total,
        "reason": R.reason,
        "points": [
            {"at": _pt(p.location), "m": p.multiplicity, "edges": list(p.edges)} for p in R.points
        ],
    }


def patchwork_to_json(R: PatchworkResult) -> dict:
    return {
        "arcs": [
            {"sign": list(a.sign), "closed": a.closed, "nodes": [list(n) for n in a.nodes]}
            for a in R.arcs
        ],
        "components": [
            {"arcs": list(c.arcs), "quadrants": [list(s) for s in c.quadrants]} for c in R.components
        ],
        "component_count": R.component_count,
        "type_I": R.type_I,
        "maximal": R.maximal,
        "orientable_quotient": R.orientable_quotient,
        "euler_char_quotient": R.euler_char_quotient,
        "canonical_signs": [list(s) for s in R.canonical_signs],
    }


def signs_from_json(data) -> dict[tuple[int, int], int]:
    """Accepts ``[{"p": [i, j], "sign": 1}, ...]`` or ``{"i,j": 1, ...}``."""
    out = {}
    if isinstance(data, Mapping):
        for k, s in data.items():
            i, j = (int(c) for c in k.split(","))
            out[i, j] = int(s)
    else:
        for item in data:
            out[tuple(int(c) for c in item["p"])] = int(item["sign"])
    if any(s not in (1, -1) for s in out.values()):
        raise PreconditionError("signs must be +1 or -1")
    return out


# ----------------------------------------------------------------------- SVG

SIZE = 400
MARGIN = 40


class _Frame:
    """Maps exact plane coordinates into a fixed viewport, y pointing up."""

    def __init__(self, points, size=SIZE, margin=MARGIN, ox=0, oy=0):
        xs = [Fraction(p[0]) for p in points] or [Fraction(0)]
        ys = [Fraction(p[1]) for p in points] or [Fraction(0)]
        lo_x, hi_x, lo_y, hi_y = min(xs), max(xs), min(ys), max(ys)
        span = max(hi_x - lo_x, hi_y - lo_y, Fraction(1))
        # room for rays beyond the outermost vertices
        pad = span / 2
        self.pad = pad
        self.lo_x, self.lo_y = lo_x - pad, lo_y - pad
        self.span = span + 2 * pad
        self.size, self.margin, self.ox, self.oy = size, margin, ox, oy

    def __call__(self, p) -> tuple[float, float]:
        inner = self.size - 2 * self.margin
        x = (Fraction(p[0]) - self.lo_x) / self.span * inner + self.margin
        y = self.size - self.margin - (Fraction(p[1]) - self.lo_y) / self.span * inner
        return float(x) + self.ox, float(y) + self.oy

    def ray_end(self, p, d):
        # stop at the edge of the padded box
        t = self.pad / max(abs(c) for c in d)
        return (Fraction(p[0]) + t * d[0], Fraction(p[1]) + t * d[1])


def _fmt(x: float) -> str:
    return f"{x:.3f}".rstrip("0").rstrip(".")


def _curve_elements(C: PlaneCurve, frame: _Frame, style: str, highlight: Optional[set[int]] = None,
                    labels: bool = True) -> list[str]:
    out = []
    for k, e in enumerate(C.edges):
        if e.kind == "segment":
            p, q = (C.vertices[i] for i in e.vertices)
        elif e.kind == "ray":
            p = C.vertices[e.vertices[0]]
            q = frame.ray_end(p, e.direction)
        else:
            p = frame.ray_end(e.point, tuple(-c for c in e.direction))
            q = frame.ray_end(e.point, e.direction)
        (x1, y1), (x2, y2) = frame(p), frame(q)
        width = 3 if highlight and k in highlight else 1
        out.append(
            f'<line x1="{_fmt(x1)}" y1="{_fmt(y1)}" x2="{_fmt(x2)}" y2="{_fmt(y2)}" '
            f'style="{style}" stroke-width="{width}"/>'
        )
        if labels and e.weight > 1:
            mx, my = frame(((Fraction(p[0]) + Fraction(q[0])) / 2, (Fraction(p[1]) + Fraction(q[1])) / 2))
            out.append(f'<text x="{_fmt(mx + 4)}" y="{_fmt(my - 4)}" font-size="12">{e.weight}</text>')
    for v in C.vertices:
        x, y = frame(v)
        out.append(f'<circle cx="{_fmt(x)}" cy="{_fmt(y)}" r="2.5" fill="black"/>')
    return out


def _svg(width: int, height: int, body: list[str]) -> str:
    head = (
        '<?xml version="1.0" encoding="UTF-8"?>\n'
        f'<svg xmlns="http://www.w3.org/2000/svg" version="1.1" width="{width}" height="{height}" '
        f'viewBox="0 0 {width} {height}">\n'
    )
    return head + "\n".join(body) + "\n</svg>\n"


def _curve_points(C: PlaneCurve):
    pts = list(C.vertices)
    pts += [e.point for e in C.edges if e.kind == "line"]
    return pts


def curve_svg(C: PlaneCurve) -> str:
    frame = _Frame(_curve_points(C))
    body = [f'<rect width="{SIZE}" height="{SIZE}" fill="white"/>']
    body += _curve_elements(C, frame, "stroke:black")
    return _svg(SIZE, SIZE, body)


def patchwork_svg(C: PlaneCurve, R: PatchworkResult) -> str:
    """One panel per quadrant sign; edges carrying an arc of that sign are drawn bold."""
    panels = {(1, 1): (1, 0), (-1, 1): (0, 0), (-1, -1): (0, 1), (1, -1): (1, 1)}
    body = [f'<rect width="{2 * SIZE}" height="{2 * SIZE}" fill="white"/>']
    for sign, (col, row) in sorted(panels.items()):
        frame = _Frame(_curve_points(C), ox=col * SIZE, oy=row * SIZE)
        used = {n[1] for a in R.arcs if a.sign == sign for n in a.nodes}
        body.append(
            f'<text x="{col * SIZE + 8}" y="{row * SIZE + 18}" font-size="14">'
            f'({"+" if sign[0] > 0 else "-"},{"+" if sign[1] > 0 else "-"})</text>'
        )
        body += _curve_elements(C, frame, "stroke:#999999", labels=False)
        for k in sorted(used):
            e = C.edges[k]
            body += [s.replace("#999999", "black") for s in _curve_elements(
                PlaneCurve(C.vertices, (e,)), frame, "stroke:#999999", {0}, labels=False)
                if s.startswith("<line")]
    return _svg(2 * SIZE, 2 * SIZE, body)
