"""Plane tropical curves, their dual subdivisions and intersections."""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations
from math import gcd, lcm
from typing import Mapping, Optional, Sequence

from ._exact import (
    Point,
    as_fraction,
    convex_hull,
    det2,
    hull_area,
    interior_lattice_points,
    lattice_length,
    lattice_points_in,
    minkowski_sum,
    point_in_polygon,
    polygon_area,
    primitive,
)
from .core import PreconditionError
from .laurent import LaurentQ
from .parsing import parse_terms

QPoint = tuple[Fraction, Fraction]


@dataclass(frozen=True)
class BivariatePoly:
    terms: Mapping[Point, Fraction]

    def __post_init__(self):
        clean = {}
        for (i, j), a in dict(self.terms).items():
            if i < 0 or j < 0:
                raise PreconditionError("exponents must be non-negative")
            clean[(int(i), int(j))] = as_fraction(a)
        if not clean:
            raise PreconditionError("a polynomial needs at least one finite term")
        object.__setattr__(self, "terms", dict(sorted(clean.items())))

    @classmethod
    def parse(cls, text: str) -> "BivariatePoly":
        return cls(parse_terms(text))

    def __call__(self, x, y) -> Fraction:
        x, y = as_fraction(x), as_fraction(y)
        return max(a + i * x + j * y for (i, j), a in self.terms.items())

    def argmax(self, x, y) -> frozenset[Point]:
        x, y = as_fraction(x), as_fraction(y)
        vals = {p: a + p[0] * x + p[1] * y for p, a in self.terms.items()}
        m = max(vals.values())
        return frozenset(p for p, v in vals.items() if v == m)

    def newton_polygon(self) -> list[Point]:
        return convex_hull(self.terms)

    def degree(self) -> int:
        """Size of the smallest simplex Conv{(0,0),(d,0),(0,d)} containing the Newton polygon."""
        return max(i + j for i, j in self.terms)

    def __str__(self):
        parts = []
        for (i, j), a in self.terms.items():
            c = str(a) if a >= 0 else f"({a})"
            mono = ("x" if i == 1 else f"x^{i}" if i else "") + ("y" if j == 1 else f"y^{j}" if j else "")
            parts.append(f"{c}*{mono}" if mono else c)
        return " + ".join(parts)


@dataclass(frozen=True)
class Cell:
    polygon: tuple[Point, ...]          # ccw vertices
    points: frozenset[Point]            # every exponent lying on the lifted face

    @property
    def area(self) -> Fraction:
        return polygon_area(self.polygon)

    def is_triangle(self) -> bool:
        return len(self.polygon) == 3

    def is_parallelogram(self) -> bool:
        if len(self.polygon) != 4:
            return False
        a, b, c, d = self.polygon
        return (b[0] - a[0], b[1] - a[1]) == (c[0] - d[0], c[1] - d[1])


@dataclass(frozen=True)
class DualSubdivision:
    terms: Mapping[Point, Fraction]
    newton: tuple[Point, ...]
    dim: int
    cells2: tuple[Cell, ...]
    cells1: tuple[tuple[Point, Point], ...]
    cells0: tuple[Point, ...]
    # 1-cells lying on the boundary of the Newton polygon
    boundary1: frozenset[tuple[Point, Point]] = field(default_factory=frozenset)

    def on_boundary(self, p: Point) -> bool:
        return point_in_polygon(p, self.newton) == "boundary"

    def interior_points(self) -> int:
        return interior_lattice_points(self.newton) if self.dim == 2 else 0

    def area(self) -> Fraction:
        return polygon_area(self.newton) if self.dim == 2 else Fraction(0)


def _upper_facets(terms: Mapping[Point, Fraction]):
    """Faces of the upper convex hull of the lifted points, as (normal, on-plane set)."""
    scale = lcm(*(a.denominator for a in terms.values()))
    pts = [(i, j, int(a * scale)) for (i, j), a in terms.items()]
    facets: list[tuple[tuple[int, int, int], frozenset[int]]] = []
    covered: list[frozenset[int]] = []
    n = len(pts)
    for ia, ib, ic in combinations(range(n), 3):
        if any(ia in s and ib in s and ic in s for s in covered):
            continue
        p, q, r = pts[ia], pts[ib], pts[ic]
        u = (q[0] - p[0], q[1] - p[1], q[2] - p[2])
        v = (r[0] - p[0], r[1] - p[1], r[2] - p[2])
        nz = u[0] * v[1] - u[1] * v[0]
        if nz == 0:
            continue
        nx = u[1] * v[2] - u[2] * v[1]
        ny = u[2] * v[0] - u[0] * v[2]
        if nz < 0:
            nx, ny, nz = -nx, -ny, -nz
        on = []
        for k, s in enumerate(pts):
            h = nx * (s[0] - p[0]) + ny * (s[1] - p[1]) + nz * (s[2] - p[2])
            if h > 0:
                break
            if h == 0:
                on.append(k)
        else:
            key = frozenset(on)
            covered.append(key)
            facets.append(((nx, ny, nz * scale), key))
    return pts, facets


def dual_subdivision(P: BivariatePoly) -> DualSubdivision:
    """Regular subdivision of the Newton polygon induced by lifting exponents to coefficients."""
    terms = P.terms
    newton = tuple(P.newton_polygon())
    if len(newton) == 1:
        return DualSubdivision(terms, newton, 0, (), (), newton)
    if len(newton) == 2:
        return _subdivision_1d(terms, newton)
    pts, facets = _upper_facets(terms)
    cells = []
    for _, on in facets:
        lattice = frozenset((pts[k][0], pts[k][1]) for k in on)
        cells.append(Cell(tuple(convex_hull(lattice)), lattice))
    cells.sort(key=lambda c: c.polygon)
    if sum(c.area for c in cells) != polygon_area(newton):
        raise ArithmeticError("upper hull faces do not tile the Newton polygon")
    edge_count: dict[tuple[Point, Point], int] = {}
    verts: set[Point] = set()
    for c in cells:
        poly = c.polygon
        verts.update(poly)
        for k in range(len(poly)):
            a, b = poly[k], poly[(k + 1) % len(poly)]
            key = (min(a, b), max(a, b))
            edge_count[key] = edge_count.get(key, 0) + 1
    boundary = frozenset(e for e, k in edge_count.items() if k == 1)
    return DualSubdivision(
        terms, newton, 2, tuple(cells), tuple(sorted(edge_count)), tuple(sorted(verts)), boundary
    )


def _subdivision_1d(terms, newton) -> DualSubdivision:
    p0 = min(newton)
    p1 = max(newton)
    step = primitive((p1[0] - p0[0], p1[1] - p0[1]))
    norm = step[0] ** 2 + step[1] ** 2

    def pos(p):
        return ((p[0] - p0[0]) * step[0] + (p[1] - p0[1]) * step[1]) // norm

    line = sorted((pos(p), a, p) for p, a in terms.items())
    hull: list = []
    for item in line:
        while len(hull) >= 2:
            (t0, a0, _), (t1, a1, _) = hull[-2], hull[-1]
            if (a1 - a0) * (item[0] - t0) <= (item[1] - a0) * (t1 - t0):
                hull.pop()
            else:
                break
        hull.append(item)
    verts = tuple(h[2] for h in hull)
    segs = tuple((verts[k], verts[k + 1]) for k in range(len(verts) - 1))
    return DualSubdivision(terms, newton, 1, (), segs, verts, frozenset(segs))


# ----------------------------------------------------------------------- curves

@dataclass(frozen=True)
class CurveEdge:
    kind: str                              # "segment", "ray" or "line"
    weight: int
    direction: tuple[int, int]             # primitive; segments point from vertices[0] to vertices[1]
    vertices: tuple[int, ...] = ()
    point: Optional[QPoint] = None         # a point on a line
    dual: Optional[tuple[Point, Point]] = None

    @property
    def bounded(self) -> bool:
        return self.kind == "segment"


@dataclass(frozen=True)
class PlaneCurve:
    vertices: tuple[QPoint, ...]
    edges: tuple[CurveEdge, ...]
    subdivision: Optional[DualSubdivision] = None
    vertex_cells: Optional[tuple[int, ...]] = None

    def incident(self, v: int) -> list[tuple[int, tuple[int, int]]]:
        """(edge index, outgoing primitive direction) for every edge at vertex v."""
        out = []
        for k, e in enumerate(self.edges):
            if e.kind == "segment":
                a, b = e.vertices
                if a == v:
                    out.append((k, e.direction))
                if b == v:
                    out.append((k, (-e.direction[0], -e.direction[1])))
            elif e.kind == "ray" and e.vertices[0] == v:
                out.append((k, e.direction))
        return out

    def bounded_edges(self) -> list[int]:
        return [k for k, e in enumerate(self.edges) if e.bounded]

    def degree(self) -> int:
        if self.subdivision is None:
            raise PreconditionError("degree needs the dual subdivision")
        return max(i + j for i, j in self.subdivision.terms)

    def regions(self) -> list[tuple[Point, bool]]:
        """Complement components as (dual lattice point, bounded?)."""
        sub = self._require_subdivision()
        return [(p, not sub.on_boundary(p)) for p in sub.cells0] if sub.dim == 2 else [
            (p, False) for p in sub.cells0
        ]

    def _require_subdivision(self) -> DualSubdivision:
        if self.subdivision is None:
            raise PreconditionError("operation needs a curve carrying its dual subdivision")
        return self.subdivision


def tropical_curve(P: BivariatePoly) -> PlaneCurve:
    sub = dual_subdivision(P)
    if sub.dim == 0:
        raise PreconditionError("a single monomial has an empty corner locus")
    if sub.dim == 1:
        edges = []
        for p, q in sub.cells1:
            d = (q[0] - p[0], q[1] - p[1])
            ap, aq = sub.terms[p], sub.terms[q]
            n2 = d[0] ** 2 + d[1] ** 2
            # points X with (q - p).X = a_p - a_q
            c = (ap - aq) / n2
            pt = (c * d[0], c * d[1])
            edges.append(
                CurveEdge("line", gcd(*d), primitive((-d[1], d[0])), (), pt, (p, q))
            )
        return PlaneCurve((), tuple(edges), sub, ())

    vertex_of_cell = []
    for c in sub.cells2:
        a, b, r = c.polygon[:3]
        # solve a_a + a.X = a_b + b.X = a_r + r.X
        rows = ((b[0] - a[0], b[1] - a[1]), (r[0] - a[0], r[1] - a[1]))
        rhs = (sub.terms[a] - sub.terms[b], sub.terms[a] - sub.terms[r])
        d = rows[0][0] * rows[1][1] - rows[0][1] * rows[1][0]
        x = (rhs[0] * rows[1][1] - rhs[1] * rows[0][1]) / d
        y = (rows[0][0] * rhs[1] - rows[1][0] * rhs[0]) / d
        vertex_of_cell.append((Fraction(x), Fraction(y)))
    order = sorted(range(len(sub.cells2)), key=lambda k: vertex_of_cell[k])
    vertices = tuple(vertex_of_cell[k] for k in order)
    vertex_cells = tuple(order)
    index_of_cell = {c: v for v, c in enumerate(order)}
    if len(set(vertices)) != len(vertices):
        raise ArithmeticError("two cells produced the same vertex")

    owners: dict[tuple[Point, Point], list[tuple[int, Point, Point]]] = {}
    for ci, c in enumerate(sub.cells2):
        poly = c.polygon
        for k in range(len(poly)):
            a, b = poly[k], poly[(k + 1) % len(poly)]
            owners.setdefault((min(a, b), max(a, b)), []).append((index_of_cell[ci], a, b))

    edges = []
    for seg in sub.cells1:
        w = lattice_length(*seg)
        own = owners[seg]
        if len(own) == 2:
            (va, _, _), (vb, _, _) = sorted(own)
            pa, pb = vertices[va], vertices[vb]
            delta = (pb[0] - pa[0], pb[1] - pa[1])
            dual_d = (seg[1][0] - seg[0][0], seg[1][1] - seg[0][1])
            if delta[0] * dual_d[0] + delta[1] * dual_d[1] != 0:
                raise ArithmeticError("edge not orthogonal to its dual")
            # primitive integer direction of delta
            perp = primitive((-dual_d[1], dual_d[0]))
            if perp[0] * delta[0] + perp[1] * delta[1] < 0:
                perp = (-perp[0], -perp[1])
            edges.append(CurveEdge("segment", w, perp, (va, vb), None, seg))
        else:
            (v, a, b), = own
            out = primitive((b[1] - a[1], -(b[0] - a[0])))
            edges.append(CurveEdge("ray", w, out, (v,), None, seg))
    edges.sort(key=lambda e: (e.kind != "segment", e.vertices, e.direction))
    return PlaneCurve(vertices, tuple(edges), sub, vertex_cells)


def check_balanced(C: PlaneCurve) -> bool:
    for v in range(len(C.vertices)):
        sx = sy = 0
        for k, (dx, dy) in C.incident(v):
            w = C.edges[k].weight
            sx += w * dx
            sy += w * dy
        if sx or sy:
            return False
    return True


def is_nonsingular(C: PlaneCurve) -> bool:
    sub = C._require_subdivision()
    if sub.dim != 2:
        return all(lattice_length(*s) == 1 for s in sub.cells1)
    return all(c.is_triangle() and c.area == Fraction(1, 2) for c in sub.cells2)


@dataclass(frozen=True)
class NodalProfile:
    is_nodal: bool
    delta: Optional[int] = None
    genus: Optional[int] = None


def nodal_profile(C: PlaneCurve, d: Optional[int] = None) -> NodalProfile:
    sub = C._require_subdivision()
    d = C.degree() if d is None else d
    if any(i + j > d for i, j in sub.terms):
        raise PreconditionError(f"Newton polygon is not inside the degree-{d} simplex")
    rays_ok = all(e.weight == 1 for e in C.edges if e.kind != "segment")
    cells_ok = all(c.is_triangle() or c.is_parallelogram() for c in sub.cells2)
    if not (rays_ok and cells_ok) or sub.dim != 2:
        return NodalProfile(False)
    simplex = [(0, 0), (d, 0), (0, d)]
    used = set(sub.cells0)
    missing = sum(1 for p in lattice_points_in(simplex) if p not in used)
    parallelograms = sum(1 for c in sub.cells2 if c.is_parallelogram())
    delta = missing + parallelograms
    return NodalProfile(True, delta, (d - 1) * (d - 2) // 2 - delta)


@dataclass(frozen=True)
class VertexMultiplicity:
    vertex: int
    m_C: int
    m_R: int
    G: LaurentQ


@dataclass(frozen=True)
class CurveMultiplicities:
    m_C: int
    m_R: int
    G: LaurentQ
    per_vertex: tuple[VertexMultiplicity, ...]


def curve_multiplicities(C: PlaneCurve) -> CurveMultiplicities:
    if not nodal_profile(C).is_nodal:
        raise PreconditionError("multiplicities are defined for nodal curves only")
    sub = C.subdivision
    per = []
    m_c, m_r, G = 1, 1, LaurentQ.one()
    for v, ci in enumerate(C.vertex_cells):
        cell = sub.cells2[ci]
        if not cell.is_triangle():
            continue
        m = int(2 * cell.area)
        inner = interior_lattice_points(cell.polygon)
        r = 0 if m % 2 == 0 else (-1) ** inner
        g = LaurentQ.quantum(m)
        per.append(VertexMultiplicity(v, m, r, g))
        m_c *= m
        m_r *= r
        G = G * g
    return CurveMultiplicities(m_c, m_r, G, tuple(per))


# ----------------------------------------------------------------- intersection

_Eps = tuple[Fraction, Fraction, Fraction]   # c0 + c1*eps + c2*eps^2


def _ep(c0, c1=0, c2=0) -> _Eps:
    return (Fraction(c0), Fraction(c1), Fraction(c2))


def _esub(a: _Eps, b: _Eps) -> _Eps:
    return (a[0] - b[0], a[1] - b[1], a[2] - b[2])


def _escale(a: _Eps, k) -> _Eps:
    return (a[0] * k, a[1] * k, a[2] * k)


def _esign(a: _Eps) -> int:
    for c in a:
        if c:
            return 1 if c > 0 else -1
    return 0


@dataclass(frozen=True)
class IntersectionPoint:
    location: QPoint
    multiplicity: int
    edges: tuple[int, int]


@dataclass(frozen=True)
class IntersectionReport:
    points: tuple[IntersectionPoint, ...]
    transverse: bool
    total: int
    reason: str = ""


def _param(C: PlaneCurve, e: CurveEdge, shift: tuple[_Eps, _Eps]):
    """Return (origin, span vector, upper parameter or None) plus lower bound flag."""
    if e.kind == "segment":
        a, b = (C.vertices[k] for k in e.vertices)
        origin = (_ep(a[0]), _ep(a[1]))
        span = (b[0] - a[0], b[1] - a[1])
        lo, hi = True, Fraction(1)
    elif e.kind == "ray":
        a = C.vertices[e.vertices[0]]
        origin = (_ep(a[0]), _ep(a[1]))
        span = e.direction
        lo, hi = True, None
    else:
        origin = (_ep(e.point[0]), _ep(e.point[1]))
        span = e.direction
        lo, hi = False, None
    origin = ((origin[0][0] + shift[0][0], origin[0][1] + shift[0][1], origin[0][2] + shift[0][2]),
              (origin[1][0] + shift[1][0], origin[1][1] + shift[1][1], origin[1][2] + shift[1][2]))
    return origin, span, lo, hi


def _in_range(s: _Eps, lo: bool, hi) -> Optional[bool]:
    """True if strictly inside, False if outside, None if on an endpoint."""
    if lo:
        sg = _esign(s)
        if sg < 0:
            return False
        if sg == 0:
            return None
    if hi is not None:
        sg = _esign(_esub(_ep(hi), s))
        if sg < 0:
            return False
        if sg == 0:
            return None
    return True


def stable_intersection(C: PlaneCurve, D: PlaneCurve, perturb: bool = False) -> IntersectionReport:
    """Transverse intersection points with multiplicities w w' |det(u, u')|.

    With ``perturb`` the second curve is translated by (eps, eps^2) for an
    infinitesimal eps > 0; the reported locations are the limits eps -> 0.
    """
    zero = _ep(0)
    shift = (_ep(0, 1), _ep(0, 0, 1)) if perturb else (zero, zero)
    pts = []
    for i, e in enumerate(C.edges):
        o1, s1, lo1, hi1 = _param(C, e, (zero, zero))
        for j, f in enumerate(D.edges):
            o2, s2, lo2, hi2 = _param(D, f, shift)
            den = det2(s1, s2)
            diff = (_esub(o2[0], o1[0]), _esub(o2[1], o1[1]))
            # det(diff, v) for a constant vector v
            def dd(v):
                return _esub(_escale(diff[0], v[1]), _escale(diff[1], v[0]))
            if den == 0:
                if _esign(dd(s1)) != 0:
                    continue  # parallel and disjoint
                if _overlap(diff, s1, lo1, hi1, s2, lo2, hi2):
                    return IntersectionReport((), False, 0, f"edges {i} and {j} overlap")
                continue
            s = _escale(dd(s2), Fraction(1, den))
            t = _escale(dd(s1), Fraction(1, den))
            r1, r2 = _in_range(s, lo1, hi1), _in_range(t, lo2, hi2)
            if r1 is False or r2 is False:
                continue
            if r1 is None or r2 is None:
                return IntersectionReport((), False, 0, f"a vertex lies on the other curve (edges {i}, {j})")
            loc = (o1[0][0] + s[0] * s1[0], o1[1][0] + s[0] * s1[1])
            mult = e.weight * f.weight * abs(det2(e.direction, f.direction))
            pts.append(IntersectionPoint(loc, mult, (i, j)))
    pts.sort(key=lambda p: (p.location, p.edges))
    return IntersectionReport(tuple(pts), True, sum(p.multiplicity for p in pts))


def _overlap(diff, s1, lo1, hi1, s2, lo2, hi2) -> bool:
    """Do two collinear pieces meet?  Both are measured along s1 from the first origin."""
    norm = s1[0] * s1[0] + s1[1] * s1[1]
    start = tuple((diff[0][k] * s1[0] + diff[1][k] * s1[1]) / norm for k in range(3))
    step = Fraction(s2[0] * s1[0] + s2[1] * s1[1], norm)
    far = tuple(c + (step * hi2 if k == 0 else 0) for k, c in enumerate(start)) if hi2 is not None else None
    near = start if lo2 else None
    b_lo, b_hi = (near, far) if step > 0 else (far, near)
    a_lo = _ep(0) if lo1 else None
    a_hi = _ep(hi1) if hi1 is not None else None
    # eps-polynomials compare lexicographically, which is their order as eps -> 0+
    lows = [x for x in (a_lo, b_lo) if x is not None]
    highs = [x for x in (a_hi, b_hi) if x is not None]
    if not lows or not highs:
        return True
    return max(lows) <= min(highs)


def mixed_area(A: Sequence[Sequence[int]], B: Sequence[Sequence[int]]) -> Fraction:
    """Area(A + B) - Area(A) - Area(B) for lattice polygons given by their points."""
    A, B = list(A), list(B)
    if not A or not B:
        raise PreconditionError("polygons must be nonempty")
    return polygon_area(minkowski_sum(A, B)) - hull_area(A) - hull_area(B)
