"""Combinatorial patchworking of non-singular plane tropical curves.

A twist set is a set of indices of bounded edges of a :class:`PlaneCurve`.
The real curve is modelled as the boundary of a ribbon around the tropical
curve: every edge carries two strands, vertices join neighbouring strands in
counterclockwise order, and twisted edges cross their strands.
"""
from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from functools import cmp_to_key
from typing import Iterable, Mapping

from ._exact import Point
from .core import PreconditionError
from .plane import PlaneCurve, is_nonsingular

Sign = tuple[int, int]
Node = tuple[int, int, int]   # (vertex, edge, side); side 0 = left of the outgoing direction


class InconsistentSigns(PreconditionError):
    """Sign propagation met a contradiction (the twist set is not admissible)."""


def _mul(a: Sign, b: Sign) -> Sign:
    return (a[0] * b[0], a[1] * b[1])


def edge_factor(direction: tuple[int, int]) -> Sign:
    u, v = direction
    return ((-1) ** (u % 2), (-1) ** (v % 2))


def _require(C: PlaneCurve) -> None:
    if C.subdivision is None or C.subdivision.dim != 2 or not is_nonsingular(C):
        raise PreconditionError("patchworking needs a non-singular curve with a 2-dimensional Newton polygon")


def _check_twists(C: PlaneCurve, T: Iterable[int]) -> frozenset[int]:
    T = frozenset(T)
    for k in T:
        if not (0 <= k < len(C.edges)) or not C.edges[k].bounded:
            raise PreconditionError(f"e{k} is not a bounded edge")
    return T


# ------------------------------------------------------------------ graph tools

def _bounded_graph(C: PlaneCurve) -> dict[int, list[tuple[int, int]]]:
    adj: dict[int, list[tuple[int, int]]] = {v: [] for v in range(len(C.vertices))}
    for k in C.bounded_edges():
        a, b = C.edges[k].vertices
        adj[a].append((b, k))
        adj[b].append((a, k))
    return adj


def _components(C: PlaneCurve, removed: frozenset[int] = frozenset()) -> int:
    adj = _bounded_graph(C)
    seen: set[int] = set()
    count = 0
    for s in adj:
        if s in seen:
            continue
        count += 1
        stack = [s]
        seen.add(s)
        while stack:
            v = stack.pop()
            for w, k in adj[v]:
                if k not in removed and w not in seen:
                    seen.add(w)
                    stack.append(w)
    return count


def cycle_basis(C: PlaneCurve) -> list[frozenset[int]]:
    """Fundamental cycles (as edge-index sets) of the bounded graph."""
    adj = _bounded_graph(C)
    parent: dict[int, tuple[int, int] | None] = {}
    depth: dict[int, int] = {}
    tree: set[int] = set()
    for root in adj:
        if root in parent:
            continue
        parent[root] = None
        depth[root] = 0
        queue = deque([root])
        while queue:
            v = queue.popleft()
            for w, k in adj[v]:
                if w not in parent:
                    parent[w] = (v, k)
                    depth[w] = depth[v] + 1
                    tree.add(k)
                    queue.append(w)
    basis = []
    for k in C.bounded_edges():
        if k in tree:
            continue
        a, b = C.edges[k].vertices
        cyc = {k}
        while a != b:
            if depth[a] < depth[b]:
                a, b = b, a
            pa, ka = parent[a]
            cyc ^= {ka}
            a = pa
        basis.append(frozenset(cyc))
    return basis


def genus(C: PlaneCurve) -> int:
    return len(cycle_basis(C))


# ------------------------------------------------------------- admissibility

def is_twist_admissible(C: PlaneCurve, T: Iterable[int]) -> bool:
    _require(C)
    T = _check_twists(C, T)
    for cyc in cycle_basis(C):
        su = sv = 0
        for k in cyc & T:
            u, v = C.edges[k].direction
            su += u
            sv += v
        if su % 2 or sv % 2:
            return False
    return True


def is_type_one(C: PlaneCurve, T: Iterable[int]) -> bool:
    """Every cycle carries an even number of twisted edges (checked on a basis)."""
    T = _check_twists(C, T)
    return all(len(cyc & T) % 2 == 0 for cyc in cycle_basis(C))


def ribbon_orientable(C: PlaneCurve, T: Iterable[int]) -> bool:
    """Orientability of the ribbon surface: two-colour vertex discs so that
    twisted bands join opposite orientations and untwisted bands equal ones."""
    T = _check_twists(C, T)
    colour: dict[int, int] = {}
    adj = _bounded_graph(C)
    for root in adj:
        if root in colour:
            continue
        colour[root] = 0
        stack = [root]
        while stack:
            v = stack.pop()
            for w, k in adj[v]:
                want = colour[v] ^ (1 if k in T else 0)
                if w not in colour:
                    colour[w] = want
                    stack.append(w)
                elif colour[w] != want:
                    return False
    return True


def is_maximal_twist(C: PlaneCurve, T: Iterable[int]) -> bool:
    _require(C)
    T = _check_twists(C, T)
    if not is_twist_admissible(C, T):
        raise PreconditionError("twist set is not admissible")
    if not is_type_one(C, T):
        return False
    base = _components(C)
    for e in T:
        if _components(C, frozenset({e})) > base:
            continue
        if not any(
            f != e
            and _components(C, frozenset({f})) == base
            and _components(C, frozenset({e, f})) > base
            for f in T
        ):
            return False
    return True


# ----------------------------------------------------------------- signs → T

def twists_from_signs(C: PlaneCurve, signs: Mapping[Point, int]) -> frozenset[int]:
    _require(C)
    sub = C.subdivision
    missing = [p for p in sub.cells0 if p not in signs]
    if missing:
        raise PreconditionError(f"no sign given for lattice points {missing}")
    out = set()
    for k in C.bounded_edges():
        e = C.edges[k]
        p1, p2 = e.dual
        apex = []
        for v in e.vertices:
            cell = sub.cells2[C.vertex_cells[v]]
            (p,) = [q for q in cell.polygon if q not in (p1, p2)]
            apex.append(p)
        p3, p4 = apex
        g = lambda p: 1 if signs[p] > 0 else -1  # noqa: E731
        if (p3[0] % 2, p3[1] % 2) != (p4[0] % 2, p4[1] % 2):
            twisted = g(p1) * g(p2) * g(p3) * g(p4) > 0
        else:
            twisted = g(p3) * g(p4) < 0
        if twisted:
            out.add(k)
    return frozenset(out)


# ----------------------------------------------------------------- patchwork

def _angle_cmp(a: tuple[int, int], b: tuple[int, int]) -> int:
    def half(v):
        return 0 if (v[1] > 0 or (v[1] == 0 and v[0] > 0)) else 1

    ha, hb = half(a), half(b)
    if ha != hb:
        return ha - hb
    c = a[0] * b[1] - a[1] * b[0]
    return -1 if c > 0 else (1 if c < 0 else 0)


def rotation(C: PlaneCurve, v: int) -> list[tuple[int, tuple[int, int]]]:
    """Edges at v sorted counterclockwise by outgoing direction."""
    return sorted(C.incident(v), key=cmp_to_key(lambda x, y: _angle_cmp(x[1], y[1])))


@dataclass(frozen=True)
class Arc:
    """A piece of the real curve inside one open quadrant."""
    nodes: tuple[Node, ...]
    sign: Sign
    closed: bool
    sectors: tuple[tuple[int, Point], ...]   # (vertex, dual lattice point of the sector)


@dataclass(frozen=True)
class Component:
    """A closed component of the real curve after joining strands at infinity."""
    arcs: tuple[int, ...]
    quadrants: tuple[Sign, ...]


@dataclass(frozen=True)
class PatchworkResult:
    arcs: tuple[Arc, ...]
    components: tuple[Component, ...]
    component_count: int
    type_I: bool
    maximal: bool
    orientable_quotient: bool
    euler_char_quotient: int
    canonical_signs: tuple[Sign, ...]

    def arc_signs(self) -> list[Sign]:
        return sorted(a.sign for a in self.arcs)


def _sector_point(C: PlaneCurve, e1: int, e2: int) -> Point:
    a, b = C.edges[e1].dual, C.edges[e2].dual
    (p,) = set(a) & set(b)
    return p


def patchwork(C: PlaneCurve, T: Iterable[int]) -> PatchworkResult:
    _require(C)
    T = _check_twists(C, T)
    if not is_twist_admissible(C, T):
        raise PreconditionError("twist set is not admissible")

    vertex_link: dict[Node, Node] = {}
    sector_of: dict[Node, tuple[int, Point]] = {}
    for v in range(len(C.vertices)):
        rot = rotation(C, v)
        for i, (k, _) in enumerate(rot):
            k2 = rot[(i + 1) % len(rot)][0]
            a, b = (v, k, 0), (v, k2, 1)
            vertex_link[a] = b
            vertex_link[b] = a
            sector_of[a] = sector_of[b] = (v, _sector_point(C, k, k2))

    edge_link: dict[Node, Node] = {}
    infinity_link: dict[Node, Node] = {}
    for k, e in enumerate(C.edges):
        if e.kind == "segment":
            a, b = e.vertices
            # at a the edge leaves along its reference direction, at b it arrives
            pairs = [((a, k, 0), (b, k, 0)), ((a, k, 1), (b, k, 1))] if k in T else \
                [((a, k, 0), (b, k, 1)), ((a, k, 1), (b, k, 0))]
            for x, y in pairs:
                edge_link[x] = y
                edge_link[y] = x
        else:
            (v,) = e.vertices
            infinity_link[(v, k, 0)] = (v, k, 1)
            infinity_link[(v, k, 1)] = (v, k, 0)

    # arcs: walk vertex and edge links only
    arc_of: dict[Node, int] = {}
    arc_nodes: list[list[Node]] = []
    arc_closed: list[bool] = []

    def walk(start: Node) -> tuple[list[Node], bool]:
        path = [start]
        use_vertex = True
        cur = start
        while True:
            nxt = vertex_link[cur] if use_vertex else edge_link.get(cur)
            if nxt is None:
                return path, False
            if nxt == start:
                return path, True
            path.append(nxt)
            cur = nxt
            use_vertex = not use_vertex

    starts = sorted(infinity_link) + sorted(vertex_link)
    for s in starts:
        if s in arc_of:
            continue
        if s in infinity_link:
            path, closed = walk(s)
        else:
            path, closed = walk(s)
            if not closed:
                continue  # will be reached from its ray end
        idx = len(arc_nodes)
        arc_nodes.append(path)
        arc_closed.append(closed)
        for n in path:
            arc_of[n] = idx

    # signs by propagation along the edge rule
    n_arcs = len(arc_nodes)
    constraints: list[list[tuple[int, Sign]]] = [[] for _ in range(n_arcs)]
    for k, e in enumerate(C.edges):
        f = edge_factor(e.direction)
        for v in e.vertices:
            x, y = arc_of[(v, k, 0)], arc_of[(v, k, 1)]
            constraints[x].append((y, f))
            constraints[y].append((x, f))
    signs: list[Sign | None] = [None] * n_arcs
    for root in range(n_arcs):
        if signs[root] is not None:
            continue
        signs[root] = (1, 1)
        queue = deque([root])
        while queue:
            x = queue.popleft()
            for y, f in constraints[x]:
                want = _mul(signs[x], f)
                if signs[y] is None:
                    signs[y] = want
                    queue.append(y)
                elif signs[y] != want:
                    raise InconsistentSigns("sign propagation is inconsistent")

    arcs = tuple(
        Arc(
            tuple(nodes),
            signs[i],
            arc_closed[i],
            tuple(sorted({sector_of[n] for n in nodes if n in sector_of})),
        )
        for i, nodes in enumerate(arc_nodes)
    )

    # closed components: arcs joined through infinity links
    comp_parent = list(range(n_arcs))

    def find(a):
        while comp_parent[a] != a:
            comp_parent[a] = comp_parent[comp_parent[a]]
            a = comp_parent[a]
        return a

    for x, y in infinity_link.items():
        comp_parent[find(arc_of[x])] = find(arc_of[y])
    groups: dict[int, list[int]] = {}
    for i in range(n_arcs):
        groups.setdefault(find(i), []).append(i)
    components = tuple(
        Component(tuple(g), tuple(signs[i] for i in g)) for g in sorted(groups.values())
    )

    canonical = min(
        tuple(sorted(_mul(s, d) for s in signs)) for d in ((1, 1), (1, -1), (-1, 1), (-1, -1))
    )
    return PatchworkResult(
        arcs=arcs,
        components=components,
        component_count=len(components),
        type_I=is_type_one(C, T),
        maximal=is_maximal_twist(C, T),
        orientable_quotient=ribbon_orientable(C, T),
        euler_char_quotient=len(C.vertices) - len(C.bounded_edges()),
        canonical_signs=canonical,
    )


def viro_quadrant(signs: Mapping[Point, int], p: Point, triangle: Iterable[Point]) -> Sign:
    """Quadrant in which lattice point p is the odd one out among the triangle's vertices."""
    tri = list(triangle)
    for eps in ((1, 1), (1, -1), (-1, 1), (-1, -1)):
        s = {q: signs[q] * eps[0] ** q[0] * eps[1] ** q[1] for q in tri}
        others = [s[q] for q in tri if q != p]
        if others[0] == others[1] != s[p]:
            return eps
    raise ValueError("triangle is not unimodular")
