"""Abstract tropical curves: metric graphs, modifications, morphisms, (co)homology.

Vertices come in three kinds:

* ``finite`` - an ordinary point of the curve;
* ``inf`` - a one-valent point at infinity (sedentary point), reached by an
  edge of infinite length;
* ``open`` - a removed one-valent end, used for punctured models.  Its edge
  is kept in the valence of its other endpoint but is not a cell of the
  cochain complex.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Mapping, Optional, Sequence, Union

from ._exact import as_fraction, fraction_str, rank, vec_gcd
from .core import PreconditionError

INF = math.inf
Length = Union[Fraction, float]
KINDS = ("finite", "inf", "open")


class DisconnectedGraphError(PreconditionError):
    def __init__(self, genera: list[int]):
        super().__init__(f"graph is disconnected; component genera {genera}")
        self.genera = genera


@dataclass(frozen=True)
class GraphEdge:
    a: int
    b: int
    length: Length


@dataclass(frozen=True)
class MetricGraph:
    kinds: tuple[str, ...]
    edges: tuple[GraphEdge, ...]

    def __post_init__(self):
        object.__setattr__(self, "kinds", tuple(self.kinds))
        fixed = []
        for e in self.edges:
            e = e if isinstance(e, GraphEdge) else GraphEdge(*e)
            length = INF if e.length in (INF, "inf") else as_fraction(e.length)
            fixed.append(GraphEdge(int(e.a), int(e.b), length))
        object.__setattr__(self, "edges", tuple(fixed))
        self.validate()

    def validate(self) -> None:
        nv = len(self.kinds)
        if any(k not in KINDS for k in self.kinds):
            raise PreconditionError(f"vertex kinds must be among {KINDS}")
        val = self.valences()
        for e in self.edges:
            if not (0 <= e.a < nv and 0 <= e.b < nv):
                raise PreconditionError("edge endpoint out of range")
            ends = {self.kinds[e.a], self.kinds[e.b]}
            special = ends - {"finite"}
            if special and (e.a == e.b or len(special) > 1 or "finite" not in ends):
                raise PreconditionError("infinite and open ends must hang off finite vertices")
            if special:
                if e.length != INF:
                    raise PreconditionError("edges to infinite or open ends have infinite length")
            elif e.length == INF or e.length <= 0:
                raise PreconditionError("edges between finite vertices need a positive finite length")
        for v, k in enumerate(self.kinds):
            if val[v] == 0:
                raise PreconditionError(f"vertex {v} is isolated")
            if k != "finite" and val[v] != 1:
                raise PreconditionError(f"vertex {v} of kind {k} must be one-valent")
            if k == "finite" and val[v] == 1 and len(self.kinds) > 1:
                raise PreconditionError(f"finite vertex {v} is a leaf at finite distance")

    def valences(self) -> list[int]:
        val = [0] * len(self.kinds)
        for e in self.edges:
            val[e.a] += 1
            val[e.b] += 1
        return val

    def components(self) -> list[list[int]]:
        parent = list(range(len(self.kinds)))

        def find(x):
            while parent[x] != x:
                parent[x] = parent[parent[x]]
                x = parent[x]
            return x

        for e in self.edges:
            parent[find(e.a)] = find(e.b)
        groups: dict[int, list[int]] = {}
        for v in range(len(self.kinds)):
            groups.setdefault(find(v), []).append(v)
        return sorted(groups.values())

    def is_compact(self) -> bool:
        return "open" not in self.kinds

    def to_json(self) -> dict:
        verts = []
        for k in self.kinds:
            item = {"inf": k == "inf"}
            if k == "open":
                item["open"] = True
            verts.append(item)
        return {
            "vertices": verts,
            "edges": [
                {"a": e.a, "b": e.b, "len": "inf" if e.length == INF else fraction_str(e.length)}
                for e in self.edges
            ],
        }

    @classmethod
    def from_json(cls, data: Mapping) -> "MetricGraph":
        kinds = []
        for v in data["vertices"]:
            if v.get("open"):
                kinds.append("open")
            elif v.get("inf"):
                kinds.append("inf")
            else:
                kinds.append("finite")
        edges = tuple(
            GraphEdge(int(e["a"]), int(e["b"]), INF if str(e["len"]) == "inf" else Fraction(str(e["len"])))
            for e in data["edges"]
        )
        return cls(tuple(kinds), edges)


def genus(G: MetricGraph) -> int:
    comps = G.components()
    genera = []
    for comp in comps:
        cs = set(comp)
        ne = sum(1 for e in G.edges if e.a in cs)
        genera.append(ne - len(comp) + 1)
    if len(comps) != 1:
        raise DisconnectedGraphError(genera)
    return genera[0]


@dataclass(frozen=True)
class EdgePoint:
    """A point on edge ``edge`` at distance ``t`` from its endpoint ``a``."""
    edge: int
    t: Fraction


def elementary_modification(G: MetricGraph, p: Union[int, EdgePoint]) -> MetricGraph:
    """Attach an infinite leaf at a finite vertex or at an interior point of a finite edge."""
    kinds = list(G.kinds)
    edges = list(G.edges)
    if isinstance(p, EdgePoint):
        e = edges[p.edge]
        if e.length == INF:
            raise PreconditionError("modification points must lie on finite edges")
        t = as_fraction(p.t)
        if not 0 < t < e.length:
            raise PreconditionError("the point must be interior to the edge")
        mid = len(kinds)
        kinds.append("finite")
        edges[p.edge] = GraphEdge(e.a, mid, t)
        edges.append(GraphEdge(mid, e.b, e.length - t))
        anchor = mid
    else:
        if not 0 <= p < len(kinds):
            raise PreconditionError("vertex out of range")
        if kinds[p] != "finite" or G.valences()[p] == 1 and len(kinds) > 1:
            raise PreconditionError("cannot modify at a one-valent vertex")
        anchor = p
    leaf = len(kinds)
    kinds.append("inf")
    edges.append(GraphEdge(anchor, leaf, INF))
    return MetricGraph(tuple(kinds), tuple(edges))


# ------------------------------------------------------------------ morphisms

@dataclass(frozen=True)
class TropicalMorphism:
    """Velocities u(e) are derivatives along the edge read from ``a`` to ``b``."""
    source: MetricGraph
    velocities: tuple[tuple[int, ...], ...]
    removed: frozenset[int] = field(default_factory=frozenset)


@dataclass(frozen=True)
class MorphismReport:
    valid: bool
    integral: bool
    balanced: bool
    degree: Optional[int]
    weights: tuple[int, ...]
    problems: tuple[str, ...] = ()


def validate_morphism(m: TropicalMorphism) -> MorphismReport:
    """Check integrality and balancing; contracted edges are allowed.

    The degree sums ``w * max(0, s_1, ..., s_n)`` over the unbounded edges,
    i.e. edges ending at a removed, open or infinite vertex, with the
    primitive direction ``s`` pointing towards that end.
    """
    G = m.source
    problems = []
    if len(m.velocities) != len(G.edges):
        raise PreconditionError("one velocity per edge is required")
    dims = {len(u) for u in m.velocities}
    if len(dims) > 1:
        raise PreconditionError("velocities must share one dimension")
    n = dims.pop() if dims else 0
    integral = all(Fraction(c).denominator == 1 for u in m.velocities for c in u)
    if not integral:
        problems.append("non-integer velocity")
    vel = [tuple(int(c) for c in u) if integral else tuple(Fraction(c) for c in u) for u in m.velocities]
    removed = set(m.removed) | {v for v, k in enumerate(G.kinds) if k != "finite"}
    balanced = True
    for v in range(len(G.kinds)):
        if v in removed:
            continue
        tot = [0] * n
        for e, u in zip(G.edges, vel):
            if e.a == v:
                tot = [x + y for x, y in zip(tot, u)]
            if e.b == v:
                tot = [x - y for x, y in zip(tot, u)]
        if any(tot):
            balanced = False
            problems.append(f"balancing fails at vertex {v}")
    weights = tuple(vec_gcd(u) for u in vel) if integral else ()
    degree = None
    if integral and balanced:
        degree = 0
        for e, u in zip(G.edges, vel):
            if e.a in removed:
                u = tuple(-c for c in u)
            elif e.b not in removed:
                continue
            w = vec_gcd(u)
            if w:
                degree += w * max(0, *(c // w for c in u))
    return MorphismReport(integral and balanced, integral, balanced, degree, weights, tuple(problems))


def parametrize_plane_curve(C) -> TropicalMorphism:
    """The abstract graph of a plane curve with its inclusion as a morphism.

    Bounded edges get their lattice length; every ray becomes an infinite leaf.
    """
    kinds = ["finite"] * len(C.vertices)
    edges, vel = [], []
    for e in C.edges:
        if e.kind == "segment":
            a, b = e.vertices
            dx = [q - p for p, q in zip(C.vertices[a], C.vertices[b])]
            # lattice length: the ratio of the displacement to the primitive direction
            k = next(i for i in range(2) if e.direction[i])
            edges.append(GraphEdge(a, b, Fraction(dx[k]) / e.direction[k]))
        elif e.kind == "ray":
            (a,) = e.vertices
            kinds.append("inf")
            edges.append(GraphEdge(a, len(kinds) - 1, INF))
        else:
            raise PreconditionError("curves with line components have no vertex to anchor")
        vel.append(tuple(e.weight * c for c in e.direction))
    return TropicalMorphism(MetricGraph(tuple(kinds), tuple(edges)), tuple(vel))


# ----------------------------------------------------------------- cohomology

@dataclass(frozen=True)
class CurveCohomology:
    h: Mapping[tuple[int, int], int]
    cochain_dims: Mapping[tuple[int, int], int]
    coboundary_ranks: Mapping[int, int]

    def diamond(self) -> tuple[int, int, int, int]:
        return (self.h[0, 0], self.h[1, 0], self.h[0, 1], self.h[1, 1])


def _cells(G: MetricGraph):
    vertices = [v for v, k in enumerate(G.kinds) if k != "open"]
    edges = [k for k, e in enumerate(G.edges) if G.kinds[e.a] != "open" and G.kinds[e.b] != "open"]
    # half-edge slots per vertex, in edge order
    slots: dict[int, list[tuple[int, str]]] = {v: [] for v in range(len(G.kinds))}
    for k, e in enumerate(G.edges):
        slots[e.a].append((k, "a"))
        slots[e.b].append((k, "b"))
    return vertices, edges, slots


def _stalk_dim(G: MetricGraph, v: int, slots) -> int:
    return len(slots[v]) - 1 if G.kinds[v] == "finite" else 0


def coboundary_matrices(G: MetricGraph) -> dict[int, list[list[int]]]:
    """Matrices of d: C^{p,0} -> C^{p,1} for p = 0, 1 (rows indexed by edges)."""
    vertices, edges, slots = _cells(G)
    # p = 0: constant coefficients
    col0 = {v: i for i, v in enumerate(vertices)}
    d0 = []
    for k in edges:
        e = G.edges[k]
        row = [0] * len(vertices)
        row[col0[e.b]] += 1
        row[col0[e.a]] -= 1
        d0.append(row)
    # p = 1: F^1(v) = functionals on R^val vanishing on (1,...,1); basis f_j = e_j^* - e_last^*
    offset = {}
    n1 = 0
    for v in vertices:
        offset[v] = n1
        n1 += _stalk_dim(G, v, slots)
    d1 = []
    for k in edges:
        row = [0] * n1
        for end in ("a", "b"):
            v = getattr(G.edges[k], end)
            dim = _stalk_dim(G, v, slots)
            if dim == 0:
                continue
            s = slots[v].index((k, end))
            # restriction evaluates the functional on the outgoing unit vector; both ends enter with sign -1
            if s < dim:
                row[offset[v] + s] -= 1
            else:
                for j in range(dim):
                    row[offset[v] + j] += 1
        d1.append(row)
    return {0: d0, 1: d1}


def boundary_matrices(G: MetricGraph) -> dict[int, list[list[int]]]:
    """Matrices of the cellular boundary C_{p,1} -> C_{p,0} built from the cosheaf maps.

    F_1(v) is R^val modulo (1,...,1) with basis the first val-1 outgoing vectors;
    an edge's tangent maps to the outgoing vector at its start and to minus
    the outgoing vector at its end.
    """
    vertices, edges, slots = _cells(G)
    row0 = {v: i for i, v in enumerate(vertices)}
    b0 = [[0] * len(edges) for _ in vertices]
    for c, k in enumerate(edges):
        e = G.edges[k]
        b0[row0[e.b]][c] += 1
        b0[row0[e.a]][c] -= 1
    offset = {}
    n1 = 0
    for v in vertices:
        offset[v] = n1
        n1 += _stalk_dim(G, v, slots)
    b1 = [[0] * len(edges) for _ in range(n1)]
    for c, k in enumerate(edges):
        e = G.edges[k]
        for end, sign in (("b", 1), ("a", -1)):
            v = getattr(e, end)
            dim = _stalk_dim(G, v, slots)
            if dim == 0:
                continue
            s = slots[v].index((k, end))
            # image of the tangent: at the end b it is minus the outgoing vector
            coeff = sign * (-1 if end == "b" else 1)
            if s < dim:
                b1[offset[v] + s][c] += coeff
            else:
                for j in range(dim):
                    b1[offset[v] + j][c] -= coeff
    return {0: b0, 1: b1}


def curve_cohomology(G: MetricGraph, open_model: bool = False) -> CurveCohomology:
    """Ranks h^{p,q} of the cellular cochain complexes with coefficients F^p.

    Graphs with open ends are refused unless ``open_model`` is set, in which
    case the punctured curve is computed with the open edges dropped.
    """
    if len(G.components()) != 1:
        raise PreconditionError("cohomology is computed for connected curves")
    if not open_model and not G.is_compact():
        raise PreconditionError("curve is not compact; pass open_model for punctured curves")
    vertices, edges, slots = _cells(G)
    d = coboundary_matrices(G)
    h = {}
    dims = {}
    ranks = {}
    for p in (0, 1):
        c0 = len(vertices) if p == 0 else sum(_stalk_dim(G, v, slots) for v in vertices)
        c1 = len(edges)
        r = rank(d[p]) if d[p] and c0 else 0
        dims[p, 0], dims[p, 1] = c0, c1
        ranks[p] = r
        h[p, 0] = c0 - r
        h[p, 1] = c1 - r
    return CurveCohomology(h, dims, ranks)


def curve_homology(G: MetricGraph, open_model: bool = False) -> dict[tuple[int, int], int]:
    if not open_model and not G.is_compact():
        raise PreconditionError("curve is not compact; pass open_model for punctured curves")
    vertices, edges, slots = _cells(G)
    b = boundary_matrices(G)
    out = {}
    for p in (0, 1):
        c0 = len(b[p])
        c1 = len(edges)
        r = rank(b[p]) if c0 and c1 else 0
        out[p, 0] = c0 - r
        out[p, 1] = c1 - r
    return out


# ------------------------------------------------------------------ examples

def cycle_graph(n: int = 1, length: Fraction = Fraction(1)) -> MetricGraph:
    """A circle subdivided into n edges."""
    edges = tuple(GraphEdge(i, (i + 1) % n, length) for i in range(n))
    return MetricGraph(("finite",) * n, edges)


def line_graph(open_ends: Sequence[bool] = (False, False, True)) -> MetricGraph:
    """A trivalent vertex with three ends, each at infinity or removed."""
    kinds = ["finite"] + ["open" if o else "inf" for o in open_ends]
    edges = tuple(GraphEdge(0, k + 1, INF) for k in range(len(open_ends)))
    return MetricGraph(tuple(kinds), edges)
