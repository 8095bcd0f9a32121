"""Exact rational and integer linear algebra used across the package.

Everything here works on Python ints and Fractions so that corner loci,
lattice memberships and ranks are decided without rounding.
"""
from __future__ import annotations

from fractions import Fraction
from math import gcd
from typing import Iterable, Sequence

Point = tuple[int, int]


def as_fraction(x) -> Fraction:
    if isinstance(x, Fraction):
        return x
    if isinstance(x, (int, str)):
        return Fraction(x)
    if isinstance(x, float):
        raise TypeError("floats are not accepted as exact coefficients")
    return Fraction(x)


def fraction_str(x: Fraction) -> str:
    return str(x.numerator) if x.denominator == 1 else f"{x.numerator}/{x.denominator}"


def vec_gcd(v: Iterable[int]) -> int:
    g = 0
    for c in v:
        g = gcd(g, c)
    return g


def primitive(v: Sequence[int]) -> tuple[int, ...]:
    g = vec_gcd(v)
    if g == 0:
        raise ValueError("zero vector has no primitive direction")
    return tuple(c // g for c in v)


def cross(o: Sequence, a: Sequence, b: Sequence):
    return (a[0] - o[0]) * (b[1] - o[1]) - (a[1] - o[1]) * (b[0] - o[0])


def det2(u: Sequence, v: Sequence):
    return u[0] * v[1] - u[1] * v[0]


def convex_hull(points: Iterable[Sequence]) -> list[tuple]:
    """Vertices of the convex hull in counterclockwise order (monotone chain).

    Collinear boundary points are dropped. Degenerate inputs return one or two
    points.
    """
    pts = sorted(set(tuple(p) for p in points))
    if len(pts) <= 2:
        return pts
    lower: list[tuple] = []
    for p in pts:
        while len(lower) >= 2 and cross(lower[-2], lower[-1], p) <= 0:
            lower.pop()
        lower.append(p)
    upper: list[tuple] = []
    for p in reversed(pts):
        while len(upper) >= 2 and cross(upper[-2], upper[-1], p) <= 0:
            upper.pop()
        upper.append(p)
    hull = lower[:-1] + upper[:-1]
    return hull


def polygon_area(poly: Sequence[Sequence]) -> Fraction:
    """Euclidean area of a polygon given by vertices in cyclic order."""
    n = len(poly)
    if n < 3:
        return Fraction(0)
    s = 0
    for k in range(n):
        x0, y0 = poly[k]
        x1, y1 = poly[(k + 1) % n]
        s += x0 * y1 - x1 * y0
    return abs(Fraction(s) / 2)


def hull_area(points: Iterable[Sequence]) -> Fraction:
    return polygon_area(convex_hull(points))


def lattice_length(p: Sequence[int], q: Sequence[int]) -> int:
    return gcd(q[0] - p[0], q[1] - p[1])


def boundary_lattice_points(poly: Sequence[Point]) -> int:
    n = len(poly)
    if n == 1:
        return 1
    if n == 2:
        return lattice_length(poly[0], poly[1]) + 1
    return sum(lattice_length(poly[k], poly[(k + 1) % n]) for k in range(n))


def interior_lattice_points(poly: Sequence[Point]) -> int:
    """Pick's theorem on a lattice polygon with vertices in cyclic order."""
    if len(poly) < 3:
        return 0
    a2 = 2 * polygon_area(poly)
    b = boundary_lattice_points(poly)
    return int((a2 - b + 2) / 2)


def point_in_polygon(p: Sequence, poly: Sequence[Sequence]) -> str:
    """Return 'interior', 'boundary' or 'outside' for a ccw convex polygon."""
    n = len(poly)
    if n == 1:
        return "boundary" if tuple(p) == tuple(poly[0]) else "outside"
    if n == 2:
        a, b = poly
        if cross(a, b, p) != 0:
            return "outside"
        lo = min(a, b)
        hi = max(a, b)
        return "boundary" if lo <= tuple(p) <= hi else "outside"
    on_edge = False
    for k in range(n):
        c = cross(poly[k], poly[(k + 1) % n], p)
        if c < 0:
            return "outside"
        if c == 0:
            on_edge = True
    return "boundary" if on_edge else "interior"


def lattice_points_in(poly: Sequence[Point]) -> list[Point]:
    xs = [p[0] for p in poly]
    ys = [p[1] for p in poly]
    out = []
    for i in range(min(xs), max(xs) + 1):
        for j in range(min(ys), max(ys) + 1):
            if point_in_polygon((i, j), poly) != "outside":
                out.append((i, j))
    return out


def minkowski_sum(a: Iterable[Sequence], b: Iterable[Sequence]) -> list[tuple]:
    b = list(b)
    return convex_hull((p[0] + q[0], p[1] + q[1]) for p in a for q in b)


# ---------------------------------------------------------------- matrices

def rank(rows: Sequence[Sequence]) -> int:
    """Rank over Q by fraction-free Gaussian elimination."""
    m = [list(map(as_fraction, r)) for r in rows if any(r)]
    if not m:
        return 0
    ncols = len(m[0])
    r = 0
    for c in range(ncols):
        piv = next((k for k in range(r, len(m)) if m[k][c] != 0), None)
        if piv is None:
            continue
        m[r], m[piv] = m[piv], m[r]
        pv = m[r][c]
        for k in range(r + 1, len(m)):
            if m[k][c] != 0:
                f = m[k][c] / pv
                m[k] = [x - f * y for x, y in zip(m[k], m[r])]
        r += 1
        if r == len(m):
            break
    return r


def solve2(a: Sequence, b: Sequence, rhs: Sequence) -> tuple[Fraction, Fraction]:
    """Solve [a; b] x = rhs for a 2x2 system of exact numbers."""
    d = a[0] * b[1] - a[1] * b[0]
    if d == 0:
        raise ZeroDivisionError("singular 2x2 system")
    x = Fraction(rhs[0] * b[1] - rhs[1] * a[1]) / d
    y = Fraction(a[0] * rhs[1] - b[0] * rhs[0]) / d
    return x, y


def integer_kernel(rows: Sequence[Sequence[int]], ncols: int) -> list[list[int]]:
    """Z-basis of {x in Z^n : A x = 0} via unimodular column reduction."""
    a = [list(r) for r in rows]
    u = [[int(i == j) for j in range(ncols)] for i in range(ncols)]  # columns of u track ops

    def col_op(i: int, j: int, f: int) -> None:
        # column i -= f * column j
        for r in a:
            r[i] -= f * r[j]
        for r in u:
            r[i] -= f * r[j]

    def swap(i: int, j: int) -> None:
        for r in a:
            r[i], r[j] = r[j], r[i]
        for r in u:
            r[i], r[j] = r[j], r[i]

    pivot_col = 0
    for row in range(len(a)):
        if pivot_col >= ncols:
            break
        while True:
            nz = [c for c in range(pivot_col, ncols) if a[row][c] != 0]
            if not nz:
                break
            best = min(nz, key=lambda c: abs(a[row][c]))
            swap(pivot_col, best)
            done = True
            for c in range(pivot_col + 1, ncols):
                if a[row][c] != 0:
                    col_op(c, pivot_col, a[row][c] // a[row][pivot_col])
                    if a[row][c] != 0:
                        done = False
            if done:
                pivot_col += 1
                break
    return [[u[r][c] for r in range(ncols)] for c in range(pivot_col, ncols)]
