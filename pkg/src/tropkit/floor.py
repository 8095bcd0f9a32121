"""Floor diagrams, their markings, and refined curve counts G_{d,g}.

Vertices are numbered ``0..d-1`` along a topological order, so every compact
edge ``(s, t, w)`` has ``s < t``.  Legs are the weight-one non-compact edges,
recorded by their target vertex.  At every vertex the incoming weight
(legs included) exceeds the outgoing weight by exactly one.
"""
from __future__ import annotations

from collections import Counter
from dataclasses import dataclass
from functools import lru_cache
from itertools import permutations
from math import factorial
from typing import Iterator

from ._workers import parallel_map
from .core import PreconditionError
from .laurent import LaurentQ

MAX_DEGREE = 6

Edge = tuple[int, int, int]


@dataclass(frozen=True)
class FloorDiagram:
    d: int
    g: int
    edges: tuple[Edge, ...]
    legs: tuple[int, ...]

    def __post_init__(self):
        object.__setattr__(self, "edges", tuple(sorted(tuple(e) for e in self.edges)))
        object.__setattr__(self, "legs", tuple(sorted(self.legs)))

    def leg_counts(self) -> list[int]:
        c = [0] * self.d
        for t in self.legs:
            c[t] += 1
        return c

    def divergence(self, v: int) -> int:
        inc = sum(w for s, t, w in self.edges if t == v) + self.leg_counts()[v]
        out = sum(w for s, t, w in self.edges if s == v)
        return inc - out

    def validate(self) -> None:
        if len(self.edges) != self.d - 1 + self.g:
            raise PreconditionError("wrong number of compact edges for (d, g)")
        if len(self.legs) != self.d:
            raise PreconditionError("a floor diagram of degree d has d legs")
        for s, t, w in self.edges:
            if not (0 <= s < self.d and 0 <= t < self.d) or w < 1:
                raise PreconditionError(f"bad edge {(s, t, w)}")
        if not _is_acyclic(self.d, self.edges):
            raise PreconditionError("floor diagram must be acyclic")
        if not _is_connected(self.d, self.edges):
            raise PreconditionError("floor diagram must be connected")
        for v in range(self.d):
            if self.divergence(v) != 1:
                raise PreconditionError(f"divergence at vertex {v} is not 1")

    def to_json(self) -> dict:
        return {
            "d": self.d,
            "g": self.g,
            "edges": [{"s": s, "t": t, "w": w} for s, t, w in self.edges],
            "legs": list(self.legs),
        }

    @classmethod
    def from_json(cls, data: dict) -> "FloorDiagram":
        edges = tuple((int(e["s"]), int(e["t"]), int(e["w"])) for e in data["edges"])
        diagram = cls(int(data["d"]), int(data["g"]), edges, tuple(int(t) for t in data["legs"]))
        diagram.validate()
        return diagram


def _is_connected(d: int, edges) -> bool:
    parent = list(range(d))

    def find(a):
        while parent[a] != a:
            parent[a] = parent[parent[a]]
            a = parent[a]
        return a

    for s, t, _ in edges:
        parent[find(s)] = find(t)
    return len({find(v) for v in range(d)}) == 1


def _is_acyclic(d: int, edges) -> bool:
    indeg = [0] * d
    for _, t, _ in edges:
        indeg[t] += 1
    ready = [v for v in range(d) if indeg[v] == 0]
    seen = 0
    while ready:
        v = ready.pop()
        seen += 1
        for s, t, _ in edges:
            if s == v:
                indeg[t] -= 1
                if indeg[t] == 0:
                    ready.append(t)
    return seen == d


# --------------------------------------------------------------- canonical form

def _topological_orders(d: int, edges) -> Iterator[tuple[int, ...]]:
    preds = [set() for _ in range(d)]
    for s, t, _ in edges:
        preds[t].add(s)

    def rec(order: list[int], placed: set[int]):
        if len(order) == d:
            yield tuple(order)
            return
        for v in range(d):
            if v not in placed and preds[v] <= placed:
                order.append(v)
                placed.add(v)
                yield from rec(order, placed)
                placed.discard(v)
                order.pop()

    yield from rec([], set())


def _encode(diagram: FloorDiagram, order: tuple[int, ...]):
    pos = {v: k for k, v in enumerate(order)}
    edges = tuple(sorted((pos[s], pos[t], w) for s, t, w in diagram.edges))
    legs = tuple(sorted(pos[t] for t in diagram.legs))
    return edges, legs


def canonical_form(diagram: FloorDiagram) -> FloorDiagram:
    """Representative of the isomorphism class (smallest relabeling)."""
    best = min(_encode(diagram, o) for o in _topological_orders(diagram.d, diagram.edges))
    return FloorDiagram(diagram.d, diagram.g, best[0], best[1])


def vertex_automorphisms(diagram: FloorDiagram) -> int:
    """Number of vertex permutations preserving edges, weights and legs."""
    target = _encode(diagram, tuple(range(diagram.d)))
    # automorphisms are exactly the topological orders reproducing the same encoding
    return sum(1 for o in _topological_orders(diagram.d, diagram.edges) if _encode(diagram, o) == target)


def automorphism_count(diagram: FloorDiagram) -> int:
    """|Aut(D)|: vertex symmetries, legs at a common vertex, parallel equal-weight edges."""
    n = vertex_automorphisms(diagram)
    for k in diagram.leg_counts():
        n *= factorial(k)
    for k in Counter(diagram.edges).values():
        n *= factorial(k)
    return n


# ------------------------------------------------------------------ enumeration

def _incoming_choices(j: int, cap: int, budget: int):
    """Multisets of incoming edges (source, weight) into vertex j of total weight <= cap."""
    items = [(i, w) for i in range(j) for w in range(1, cap + 1)]

    def rec(start: int, left_w: int, left_n: int, chosen: list):
        yield tuple(chosen)
        if left_n == 0:
            return
        for k in range(start, len(items)):
            i, w = items[k]
            if w <= left_w:
                chosen.append((i, w))
                yield from rec(k, left_w - w, left_n - 1, chosen)
                chosen.pop()

    yield from rec(0, cap, budget, [])


def enumerate_diagrams(d: int, g: int) -> list[FloorDiagram]:
    """All floor diagrams of degree d and genus g up to isomorphism, canonically ordered."""
    if not 1 <= d <= MAX_DEGREE:
        raise PreconditionError(f"degree must be between 1 and {MAX_DEGREE}")
    if g < 0:
        raise PreconditionError("genus must be non-negative")
    n_edges = d - 1 + g
    found: set[FloorDiagram] = set()
    out_w = [0] * d
    edges: list[Edge] = []

    def rec(j: int):
        if j == 0:
            if len(edges) == n_edges and _is_connected(d, edges):
                legs = []
                for v in range(d):
                    inc = sum(w for s, t, w in edges if t == v)
                    legs += [v] * (1 + out_w[v] - inc)
                found.add(canonical_form(FloorDiagram(d, g, tuple(edges), tuple(legs))))
            return
        budget = n_edges - len(edges)
        for choice in _incoming_choices(j, 1 + out_w[j], budget):
            if not choice and j > 0 and out_w[j] == 0:
                continue  # isolated vertex: never connected
            for i, w in choice:
                edges.append((i, j, w))
                out_w[i] += w
            rec(j - 1)
            for i, w in choice:
                edges.pop()
                out_w[i] -= w

    if d == 1:
        if g == 0:
            found.add(FloorDiagram(1, 0, (), (0,)))
    else:
        rec(d - 1)
    return sorted(found, key=lambda D: (D.edges, D.legs))


# -------------------------------------------------------------------- markings

def _element_poset(diagram: FloorDiagram) -> list[int]:
    """Predecessor bitmasks of the marking poset (vertices, edges, legs)."""
    d = diagram.d
    preds: list[int] = [0] * d
    for s, t, _ in diagram.edges:
        k = len(preds)
        preds.append(1 << s)          # edge above its source
        preds[t] |= 1 << k            # target above the edge
    for t in diagram.legs:
        k = len(preds)
        preds.append(0)
        preds[t] |= 1 << k
    return preds


def linear_extensions(preds: list[int]) -> int:
    """Count linear extensions by dynamic programming over downsets."""
    n = len(preds)
    full = (1 << n) - 1

    @lru_cache(maxsize=None)
    def count(mask: int) -> int:
        if mask == full:
            return 1
        total = 0
        for e in range(n):
            bit = 1 << e
            if not mask & bit and preds[e] & mask == preds[e]:
                total += count(mask | bit)
        return total

    result = count(0)
    count.cache_clear()
    return result


def count_markings(diagram: FloorDiagram) -> int:
    ext = linear_extensions(_element_poset(diagram))
    aut = automorphism_count(diagram)
    if ext % aut:
        raise ArithmeticError("automorphism group does not act freely on markings")
    return ext // aut


@dataclass(frozen=True)
class Multiplicities:
    m_C: int
    m_R: int
    G: LaurentQ


def diagram_multiplicities(diagram: FloorDiagram) -> Multiplicities:
    m_c, m_r, G = 1, 1, LaurentQ.one()
    for _, _, w in diagram.edges:
        m_c *= w * w
        m_r *= 0 if w % 2 == 0 else 1
        G = G * LaurentQ.quantum(w) ** 2
    return Multiplicities(m_c, m_r, G)


@dataclass(frozen=True)
class MarkedCount:
    diagram: FloorDiagram
    markings: int


def marked_counts(d: int, g: int, workers: int | None = None) -> list[MarkedCount]:
    diagrams = enumerate_diagrams(d, g)
    counts = parallel_map(count_markings, diagrams, workers)
    return [MarkedCount(D, m) for D, m in zip(diagrams, counts)]


def refined_invariant(d: int, g: int, workers: int | None = None) -> LaurentQ:
    """Sum over marked floor diagrams of G(D)."""
    total = LaurentQ()
    for mc in marked_counts(d, g, workers):
        total = total + diagram_multiplicities(mc.diagram).G * mc.markings
    return total


def max_genus(d: int) -> int:
    return (d - 1) * (d - 2) // 2


def orbit_count_markings(diagram: FloorDiagram) -> int:
    """Count marked diagrams up to equivalence by explicit orbit enumeration.

    Slow reference used to confirm that automorphisms act freely; only
    suitable for small diagrams.
    """
    preds = _element_poset(diagram)
    n = len(preds)
    d = diagram.d
    n_edges = len(diagram.edges)
    # all element permutations induced by diagram automorphisms
    autos = []
    for perm in permutations(range(d)):
        edge_img = [(perm[s], perm[t], w) for s, t, w in diagram.edges]
        if sorted(edge_img) != sorted(diagram.edges):
            continue
        if sorted(perm[t] for t in diagram.legs) != sorted(diagram.legs):
            continue
        # match edges and legs to images in every possible way
        edge_slots = [[k for k in range(n_edges) if diagram.edges[k] == img] for img in edge_img]
        leg_slots = [[k for k in range(len(diagram.legs)) if diagram.legs[k] == perm[t]] for t in diagram.legs]
        for e_map in _bijections(edge_slots):
            for l_map in _bijections(leg_slots):
                full = list(perm) + [d + k for k in e_map] + [d + n_edges + k for k in l_map]
                autos.append(tuple(full))
    extensions = []

    def rec(order: list[int], mask: int):
        if len(order) == n:
            extensions.append(tuple(order))
            return
        for e in range(n):
            if not mask >> e & 1 and preds[e] & mask == preds[e]:
                order.append(e)
                rec(order, mask | 1 << e)
                order.pop()

    rec([], 0)
    seen: set[tuple[int, ...]] = set()
    orbits = 0
    for ext in extensions:
        if ext in seen:
            continue
        orbits += 1
        for a in autos:
            seen.add(tuple(a[x] for x in ext))
    return orbits


def _bijections(slots: list[list[int]]):
    def rec(k: int, used: set[int], acc: list[int]):
        if k == len(slots):
            yield list(acc)
            return
        for c in slots[k]:
            if c not in used:
                used.add(c)
                acc.append(c)
                yield from rec(k + 1, used, acc)
                acc.pop()
                used.discard(c)

    yield from rec(0, set(), [])
