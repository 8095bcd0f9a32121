"""Fan tropical curves in a plane fan, intersection numbers, and matroid fans."""
from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations
from typing import Iterable, Mapping, Optional, Sequence

from ._exact import integer_kernel, rank, vec_gcd
from .core import PreconditionError

Vector = tuple[int, ...]


# ---------------------------------------------------------------- fan curves

@dataclass(frozen=True)
class Ray:
    direction: Vector
    weight: int = 1


@dataclass(frozen=True)
class FanCurve:
    rays: tuple[Ray, ...]

    def __post_init__(self):
        rays = []
        for r in self.rays:
            r = r if isinstance(r, Ray) else Ray(tuple(r[0]), int(r[1]))
            d = tuple(int(c) for c in r.direction)
            if vec_gcd(d) != 1:
                raise PreconditionError(f"ray direction {d} is not primitive")
            if r.weight < 1:
                raise PreconditionError("ray weights must be positive")
            rays.append(Ray(d, r.weight))
        if not rays:
            raise PreconditionError("a fan curve needs at least one ray")
        if len({len(r.direction) for r in rays}) != 1:
            raise PreconditionError("rays live in different dimensions")
        object.__setattr__(self, "rays", tuple(rays))

    @property
    def n(self) -> int:
        return len(self.rays[0].direction)

    def is_balanced(self) -> bool:
        return all(sum(r.weight * r.direction[k] for r in self.rays) == 0 for k in range(self.n))

    def scaled(self, factor: int) -> "FanCurve":
        return FanCurve(tuple(Ray(r.direction, r.weight * factor) for r in self.rays))

    def to_json(self) -> dict:
        return {"n": self.n, "rays": [{"dir": list(r.direction), "w": r.weight} for r in self.rays]}

    @classmethod
    def from_json(cls, data: Mapping) -> "FanCurve":
        rays = tuple(Ray(tuple(int(c) for c in r["dir"]), int(r.get("w", 1))) for r in data["rays"])
        curve = cls(rays)
        if "n" in data and int(data["n"]) != curve.n:
            raise PreconditionError("declared dimension does not match the rays")
        return curve


def fan_degree(C: FanCurve) -> int:
    if not C.is_balanced():
        raise PreconditionError("fan curve is not balanced")
    return sum(r.weight * max(0, *r.direction) for r in C.rays)


@dataclass(frozen=True)
class FanPlane:
    """The fan in R^n spanned by pairs of v_0 = (1,...,1), v_i = -e_i."""
    n: int

    def __post_init__(self):
        if self.n < 2:
            raise PreconditionError("plane fans need n >= 2")

    def vector(self, i: int) -> Vector:
        if i == 0:
            return (1,) * self.n
        return tuple(-1 if k == i - 1 else 0 for k in range(self.n))

    def faces(self) -> list[tuple[int, int]]:
        return list(combinations(range(self.n + 1), 2))

    def decompose(self, direction: Sequence[int]) -> dict[int, int]:
        """Non-negative coordinates of a vector in the generators of its cone.

        Raises if the vector is not in the support of the plane.
        """
        if len(direction) != self.n:
            raise PreconditionError("dimension mismatch")
        c0 = max(0, *direction)
        coeffs = {0: c0}
        for k, x in enumerate(direction):
            coeffs[k + 1] = c0 - x
        nz = {i: c for i, c in coeffs.items() if c}
        if len(nz) > 2:
            raise PreconditionError(f"ray {tuple(direction)} is not in a face of the plane")
        return nz


def _face_data(P: FanPlane, C: FanCurve):
    out = []
    for r in C.rays:
        nz = P.decompose(r.direction)
        out.append((r, nz))
    return out


def corner_intersection(P: FanPlane, C1: FanCurve, C2: FanCurve, face: tuple[int, int]) -> int:
    i, j = sorted(face)
    total = 0
    for r1, c1 in _face_data(P, C1):
        if set(c1) != {i, j}:
            continue
        p1, q1 = c1[i], c1[j]
        for r2, c2 in _face_data(P, C2):
            if set(c2) != {i, j}:
                continue
            p2, q2 = c2[i], c2[j]
            total += r1.weight * r2.weight * min(p1 * q2, q1 * p2)
    return total


def local_intersection(P: FanPlane, C1: FanCurve, C2: FanCurve) -> int:
    return fan_degree(C1) * fan_degree(C2) - sum(
        corner_intersection(P, C1, C2, f) for f in P.faces()
    )


def adjunction_bound(P: FanPlane, C: FanCurve) -> int:
    """Left-hand side of the adjunction inequality; negative means not approximable."""
    return local_intersection(P, C, C) + (P.n - 2) * fan_degree(C) - sum(r.weight for r in C.rays) + 2


def trivalent_approximable(P: FanPlane, C: FanCurve) -> bool:
    if P.n != 3:
        raise PreconditionError("the trivalent criterion is stated for planes in R^3")
    if len(C.rays) > 3:
        raise PreconditionError("the trivalent criterion needs at most three rays")
    return local_intersection(P, C, C) in (0, -1)


def boundary_line(n: int) -> FanCurve:
    """The line with rays v_0, ..., v_n (all weight one)."""
    P = FanPlane(n)
    return FanCurve(tuple(Ray(P.vector(i)) for i in range(n + 1)))


# ------------------------------------------------------------------ matroids

@dataclass(frozen=True)
class Matroid:
    """Matroid on {0..n} described by its lattice of flats."""
    n: int
    flats: Mapping[frozenset[int], int]

    @property
    def ground(self) -> frozenset[int]:
        return frozenset(range(self.n + 1))

    @property
    def rank(self) -> int:
        return self.flats[self.ground]

    @classmethod
    def from_flats(cls, n: int, flats: Iterable[tuple[Iterable[int], int]]) -> "Matroid":
        table = {frozenset(s): int(r) for s, r in flats}
        ground = frozenset(range(n + 1))
        if ground not in table:
            top = max(table.values(), default=0) + 1
            table[ground] = top
        table.setdefault(frozenset(), 0)
        M = cls(n, table)
        M.validate()
        return M

    @classmethod
    def uniform(cls, k: int, n: int) -> "Matroid":
        """U_{k, n+1} on the ground set {0..n}."""
        if not 1 <= k <= n + 1:
            raise PreconditionError("need 1 <= rank <= n+1")
        flats = {frozenset(s): len(s) for r in range(k) for s in combinations(range(n + 1), r)}
        flats[frozenset(range(n + 1))] = k
        return cls(n, flats)

    @classmethod
    def from_vectors(cls, vectors: Sequence[Sequence[int]]) -> "Matroid":
        """Matroid of a finite list of vectors (closure by linear span)."""
        vecs = [list(v) for v in vectors]
        n = len(vecs) - 1

        def closure(S):
            r = rank([vecs[i] for i in S])
            return frozenset(i for i in range(n + 1) if rank([vecs[j] for j in S] + [vecs[i]]) == r), r

        flats = {}
        for size in range(n + 2):
            for S in combinations(range(n + 1), size):
                F, r = closure(S)
                flats[F] = r
        return cls(n, flats)

    def validate(self) -> None:
        ground = self.ground
        if any(not F <= ground for F in self.flats):
            raise PreconditionError("flat outside the ground set")
        if frozenset() not in self.flats or self.flats[frozenset()] != 0:
            raise PreconditionError("matroid has loops or the empty flat is missing")
        for A, B in combinations(list(self.flats), 2):
            if A & B not in self.flats:
                raise PreconditionError("flats are not closed under intersection")
        for F, r in self.flats.items():
            if F == ground:
                continue
            covers = [G for G in self.flats if F < G and not any(F < H < G for H in self.flats)]
            if any(self.flats[G] != r + 1 for G in covers):
                raise PreconditionError("covering flats must increase rank by one")
            rest = ground - F
            parts = [G - F for G in covers]
            if sorted(x for p in parts for x in p) != sorted(rest):
                raise PreconditionError("covers of a flat must partition its complement")

    def to_json(self) -> dict:
        return {
            "n": self.n,
            "flats": [
                {"set": sorted(F), "rank": r}
                for F, r in sorted(self.flats.items(), key=lambda x: (x[1], sorted(x[0])))
            ],
        }

    @classmethod
    def from_json(cls, data: Mapping) -> "Matroid":
        n = int(data["n"])
        if data.get("type") == "uniform":
            return cls.uniform(int(data["rank"]), n)
        return cls.from_flats(n, ((f["set"], f["rank"]) for f in data["flats"]))


def braid_matroid() -> Matroid:
    """Six lines x=0, y=0, z=0, x=y, x=z, y=z in the projective plane."""
    return Matroid.from_vectors([(1, 0, 0), (0, 1, 0), (0, 0, 1), (1, -1, 0), (1, 0, -1), (0, 1, -1)])


# -------------------------------------------------------------------- fans

@dataclass(frozen=True)
class PolyhedralFan:
    """Fan given by ray generators and simplicial cones (tuples of ray indices)."""
    ambient: int
    rays: tuple[Vector, ...]
    cones: tuple[tuple[int, ...], ...]
    weights: tuple[int, ...]

    @property
    def dim(self) -> int:
        return len(self.cones[0]) if self.cones else 0

    def is_pure(self) -> bool:
        return len({len(c) for c in self.cones}) <= 1

    def to_json(self) -> dict:
        return {
            "ambient": self.ambient,
            "rays": [list(r) for r in self.rays],
            "cones": [{"rays": list(c), "w": w} for c, w in zip(self.cones, self.weights)],
        }

    @classmethod
    def from_json(cls, data: Mapping) -> "PolyhedralFan":
        return cls(
            int(data["ambient"]),
            tuple(tuple(int(x) for x in r) for r in data["rays"]),
            tuple(tuple(int(i) for i in c["rays"]) for c in data["cones"]),
            tuple(int(c.get("w", 1)) for c in data["cones"]),
        )


def matroid_fan(M: Matroid) -> PolyhedralFan:
    M.validate()
    if M.rank < 1:
        raise PreconditionError("matroid rank must be at least 1")
    n = M.n
    ground = M.ground
    proper = [F for F in M.flats if F and F != ground]
    proper.sort(key=lambda F: (M.flats[F], sorted(F)))

    def vec(F) -> Vector:
        v = [0] * n
        for i in F:
            if i == 0:
                v = [x + 1 for x in v]
            else:
                v[i - 1] -= 1
        return tuple(v)

    index = {F: k for k, F in enumerate(proper)}
    rays = tuple(vec(F) for F in proper)
    top = M.rank - 1
    cones = []

    def extend(chain):
        if len(chain) == top:
            cones.append(tuple(index[F] for F in chain))
            return
        r = M.flats[chain[-1]] if chain else 0
        for G in proper:
            if M.flats[G] == r + 1 and (not chain or chain[-1] < G):
                extend(chain + [G])

    extend([])
    if top == 0:
        cones = [()]
    return PolyhedralFan(n, rays, tuple(sorted(cones)), tuple(1 for _ in cones))


def _quotient_map(generators: Sequence[Vector], n: int) -> list[list[int]]:
    """Rows form a Z-basis of integer functionals vanishing on the span."""
    if not generators:
        return [[int(i == j) for j in range(n)] for i in range(n)]
    return integer_kernel([list(g) for g in generators], n)


def verify_balancing(F: PolyhedralFan) -> bool:
    if not F.is_pure():
        raise PreconditionError("balancing is defined for pure fans")
    for c in F.cones:
        if rank([F.rays[i] for i in c]) != len(c):
            raise PreconditionError("cones must be simplicial")
    d = F.dim
    if d == 0:
        return True
    facets_of: dict[tuple[int, ...], list[tuple[int, int]]] = {}
    for ci, c in enumerate(F.cones):
        for drop in c:
            E = tuple(sorted(set(c) - {drop}))
            facets_of.setdefault(E, []).append((ci, drop))
    for E, adj in facets_of.items():
        Q = _quotient_map([F.rays[i] for i in E], F.ambient)
        total = [0] * len(Q)
        for ci, extra in adj:
            img = [sum(q[k] * F.rays[extra][k] for k in range(F.ambient)) for q in Q]
            g = vec_gcd(img)
            for k in range(len(Q)):
                total[k] += F.weights[ci] * img[k] // g
        if any(total):
            return False
    return True


@dataclass(frozen=True)
class LinkGraph:
    vertices: tuple[int, ...]           # ray indices kept after smoothing
    edges: tuple[tuple[int, int], ...]

    def degrees(self) -> dict[int, int]:
        deg = {v: 0 for v in self.vertices}
        for a, b in self.edges:
            deg[a] += 1
            deg[b] += 1
        return deg

    def girth(self) -> Optional[int]:
        best = None
        adj: dict[int, list[tuple[int, int]]] = {v: [] for v in self.vertices}
        for k, (a, b) in enumerate(self.edges):
            adj[a].append((b, k))
            adj[b].append((a, k))
        for s in self.vertices:
            dist = {s: 0}
            via = {s: -1}
            queue = [s]
            for v in queue:
                for w, k in adj[v]:
                    if k == via[v]:
                        continue
                    if w in dist:
                        cyc = dist[v] + dist[w] + 1
                        best = cyc if best is None else min(best, cyc)
                    else:
                        dist[w] = dist[v] + 1
                        via[w] = k
                        queue.append(w)
        return best


def fan_link(F: PolyhedralFan) -> LinkGraph:
    if F.dim != 2:
        if F.dim == 1:
            return LinkGraph(tuple(sorted({c[0] for c in F.cones})), ())
        raise PreconditionError("the link graph is defined for fans of dimension at most two")
    edges = {k: tuple(c) for k, c in enumerate(F.cones)}
    weights = dict(enumerate(F.weights))
    vertices = set(i for c in F.cones for i in c)
    changed = True
    while changed:
        changed = False
        for v in sorted(vertices):
            inc = [k for k, c in edges.items() if v in c]
            if len(inc) != 2:
                continue
            k1, k2 = inc
            a = next(x for x in edges[k1] if x != v)
            b = next(x for x in edges[k2] if x != v)
            if a == b or weights[k1] != weights[k2]:
                continue
            if rank([F.rays[v], F.rays[a], F.rays[b]]) != 2:
                continue
            del edges[k1], edges[k2]
            new = max(list(edges) + [k1, k2]) + 1
            edges[new] = (min(a, b), max(a, b))
            weights[new] = weights[k1]
            vertices.discard(v)
            changed = True
            break
    return LinkGraph(tuple(sorted(vertices)), tuple(sorted(tuple(sorted(e)) for e in edges.values())))
