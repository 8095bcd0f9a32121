"""Acceptance criteria, one PASS/FAIL line each.

Run with ``pytest tests/test_acceptance.py -v`` or directly as a script.
"""
import math
import random
import sys
import time
from fractions import Fraction
from math import comb
from pathlib import Path

import pytest

sys.path.insert(0, str(Path(__file__).parent))

from test_graphs import random_curve                                   # noqa: E402
from test_patchwork import CONIC, CUBIC, GENUS_TWO, LINE, SMALL, STRIP  # noqa: E402
from test_plane import check_duality, random_poly                      # noqa: E402

from tropkit import LaurentQ, dequantized_add                          # noqa: E402
from tropkit import floor                                               # noqa: E402
from tropkit._exact import convex_hull, interior_lattice_points, point_in_polygon  # noqa: E402
from tropkit.fan import (                                               # noqa: E402
    FanCurve, FanPlane, Matroid, Ray, adjunction_bound, braid_matroid, fan_degree,
    fan_link, local_intersection, matroid_fan, trivalent_approximable, verify_balancing,
)
from tropkit.graphs import (                                            # noqa: E402
    EdgePoint, INF, curve_cohomology, elementary_modification, line_graph,
)
from tropkit.patchwork import (                                         # noqa: E402
    genus as bounded_genus, is_maximal_twist, is_twist_admissible, is_type_one,
    patchwork, ribbon_orientable, twists_from_signs,
)
from tropkit.plane import (                                             # noqa: E402
    BivariatePoly, dual_subdivision, is_nonsingular, mixed_area, stable_intersection, tropical_curve,
)


def _report(name: str, ok: bool, detail: str) -> str:
    return f"{'PASS' if ok else 'FAIL'}  {name}: {detail}"


# ----------------------------------------------------------------- criteria

def refined_invariants():
    want = {
        (3, 0): LaurentQ({-2: 1, 0: 10, 2: 1}),
        (4, 2): LaurentQ({-2: 3, 0: 21, 2: 3}),
        (4, 1): LaurentQ({-4: 3, -2: 33, 0: 153, 2: 33, 4: 3}),
        (4, 0): LaurentQ({-6: 1, -4: 13, -2: 94, 0: 404, 2: 94, 4: 13, 6: 1}),
    }
    ok, slowest, got = True, 0.0, {}
    for key, G in want.items():
        t = time.perf_counter()
        got[key] = floor.refined_invariant(*key)
        slowest = max(slowest, time.perf_counter() - t)
        ok &= got[key] == G
    specs = [(got[3, 0].at_one(), 12), (got[3, 0].at_minus_one(), 8), (got[4, 0].at_one(), 620),
             (got[4, 0].at_minus_one(), 240), (got[4, 1].at_one(), 225), (got[4, 2].at_one(), 27)]
    ok &= all(a == b for a, b in specs) and slowest < 1
    return ok, f"G_3,0 = {got[3, 0]}; N/W = {[a for a, _ in specs]}; slowest {slowest:.3f}s"


def marking_counts():
    want = {
        (1, 0): [1], (2, 0): [1], (3, 1): [1], (3, 0): [1, 5, 3],
        (4, 3): [1], (4, 2): [7, 2, 5, 1, 3],
        (4, 1): [15, 1, 6, 26, 9, 4, 7, 2, 21, 6, 21],
        (4, 0): [35, 40, 8, 15, 6, 1, 45, 3, 18, 102, 15, 15],
    }
    t = time.perf_counter()
    bad = [k for k, v in want.items()
           if sorted(m.markings for m in floor.marked_counts(*k)) != sorted(v)]
    dt = time.perf_counter() - t
    return not bad and dt < 10, f"{len(want) - len(bad)}/{len(want)} marking tables match in {dt:.3f}s"


def closed_forms():
    ok = True
    for d in (3, 4, 5):
        gmax = floor.max_genus(d)
        half = (d - 1) * (d - 2) // 2
        ok &= floor.refined_invariant(d, gmax) == LaurentQ.one()
        ok &= floor.refined_invariant(d, gmax - 1) == LaurentQ({-2: half, 0: (d - 1) * (2 * d - 1), 2: half})
        ok &= floor.refined_invariant(d, gmax - 1).at_one() == 3 * (d - 1) ** 2
        for g in range(gmax + 1):
            G = floor.refined_invariant(d, g)
            ok &= G.coefficient(G.top_exponent()) == comb(gmax, g)
    return ok, "d in {3,4,5}: top genus, next genus, top coefficients"


def fan_values():
    P = FanPlane(3)
    C = FanCurve((Ray((-2, -3, 0)), Ray((0, 1, 1)), Ray((2, 2, -1))))
    L = FanCurve((Ray((1, 1, 0)), Ray((-1, -1, 0))))
    got = (local_intersection(P, L, L), local_intersection(P, C, C), local_intersection(P, C, L),
           fan_degree(C), adjunction_bound(P, C), trivalent_approximable(P, C), trivalent_approximable(P, L))
    return got == (-1, -4, -1, 3, -2, False, True), f"(L2, C2, CL, deg, adj, C ok, L ok) = {got}"


def matroid_fans():
    t = time.perf_counter()
    F = matroid_fan(braid_matroid())
    link = fan_link(F)
    ok = verify_balancing(F)
    ok &= len(link.vertices) == 10 and len(link.edges) == 15
    ok &= set(link.degrees().values()) == {3} and link.girth() == 5
    uniform = 0
    for size in range(2, 6):
        for k in range(1, size + 1):
            ok &= verify_balancing(matroid_fan(Matroid.uniform(k, size - 1)))
            uniform += 1
    dt = time.perf_counter() - t
    return ok and dt < 5, f"Petersen link, {uniform} uniform matroids balanced, {dt:.3f}s"


def _nonsingular_poly(rng):
    """All lattice points of a random polygon, lifted by a strictly convex quadratic plus small noise."""
    corners = [(rng.randint(0, 4), rng.randint(0, 4)) for _ in range(rng.randint(3, 6))]
    hull = convex_hull(corners)
    pts = [(i, j) for i in range(5) for j in range(5) if point_in_polygon((i, j), hull) != "outside"]
    return BivariatePoly({(i, j): Fraction(-100 * (i * i + i * j + j * j) + rng.randint(-9, 9), 1)
                          for i, j in pts})


def plane_properties():
    t = time.perf_counter()
    rng = random.Random(20240611)
    for _ in range(200):
        check_duality(random_poly(rng))
    rng = random.Random(77)
    pairs = 0
    while pairs < 100:
        P, Q = random_poly(rng, spread=40), random_poly(rng, spread=40)
        if dual_subdivision(P).dim < 1 or dual_subdivision(Q).dim < 1:
            continue
        R = stable_intersection(tropical_curve(P), tropical_curve(Q))
        if R.transverse:
            pairs += 1
            assert R.total == mixed_area(list(P.terms), list(Q.terms))
    rng = random.Random(3)
    nonsingular = 0
    for _ in range(100):
        P = _nonsingular_poly(rng)
        C = tropical_curve(P)
        if dual_subdivision(P).dim == 2 and is_nonsingular(C):
            nonsingular += 1
            assert bounded_genus(C) == interior_lattice_points(dual_subdivision(P).newton)
    dt = time.perf_counter() - t
    return dt < 30, f"200 duality checks, 100 transverse pairs, {nonsingular} non-singular b1 checks, {dt:.1f}s"


def patchwork_properties():
    ok = True
    distributions = 0
    for C in SMALL.values():
        pts = list(C.subdivision.cells0)
        ok &= len(pts) <= 8
        for bits in range(2 ** len(pts)):
            signs = {p: 1 if bits >> k & 1 else -1 for k, p in enumerate(pts)}
            ok &= is_twist_admissible(C, twists_from_signs(C, signs))
            distributions += 1
    for C in (LINE, CONIC, CUBIC, STRIP, GENUS_TWO):
        ok &= is_twist_admissible(C, []) and is_maximal_twist(C, [])
    checked = 0
    for C in (CUBIC, GENUS_TWO):
        bounded = C.bounded_edges()
        for mask in range(2 ** len(bounded)):
            T = [k for i, k in enumerate(bounded) if mask >> i & 1]
            if is_twist_admissible(C, T):
                ok &= is_type_one(C, T) == ribbon_orientable(C, T) == patchwork(C, T).type_I
                checked += 1
    R = patchwork(LINE, [])
    orbit = {tuple(sorted((s * a, t * b) for s, t in [(1, 1), (-1, 1), (-1, -1)]))
             for a in (1, -1) for b in (1, -1)}
    ok &= R.component_count == 1 and tuple(R.arc_signs()) in orbit
    return ok, f"{distributions} sign distributions, {checked} type-I comparisons, line arcs {R.arc_signs()}"


def cohomology():
    ok = curve_cohomology(line_graph((False, False, True)), open_model=True).diamond() == (1, 0, 0, 0)
    ok &= curve_cohomology(line_graph((True, True, True)), open_model=True).h[1, 0] == 2
    rng = random.Random(2024)
    for k in range(20):
        g = k % 4
        G = random_curve(g, rng, leaves=rng.randint(0, 2))
        H = dict(curve_cohomology(G).h)
        ok &= curve_cohomology(G).diamond() == (1, g, g, 1)
        v = next(i for i, kind in enumerate(G.kinds) if kind == "finite")
        ok &= dict(curve_cohomology(elementary_modification(G, v)).h) == H
        e = next(i for i, edge in enumerate(G.edges) if edge.length != INF)
        ok &= dict(curve_cohomology(elementary_modification(G, EdgePoint(e, G.edges[e].length / 3))).h) == H
    return ok, "affine line, punctured line, 20 random curves with modifications"


def dequantization():
    rng = random.Random(1)
    worst = 0.0
    for _ in range(100_000):
        x, y = rng.uniform(-100, 100), rng.uniform(-100, 100)
        t = math.exp(rng.uniform(1e-3, 12))
        v = dequantized_add(x, y, t)
        m = max(x, y)
        worst = max(worst, m - v, v - (m + math.log(2) / math.log(t)))
    return worst <= 1e-12, f"10^5 samples, worst violation {worst:.2e}"


CRITERIA = [
    ("refined invariants", refined_invariants),
    ("marking counts", marking_counts),
    ("closed forms", closed_forms),
    ("fan intersections", fan_values),
    ("matroid fans", matroid_fans),
    ("plane curve properties", plane_properties),
    ("patchworking properties", patchwork_properties),
    ("tropical cohomology", cohomology),
    ("dequantization bound", dequantization),
]


@pytest.mark.parametrize("name,fn", CRITERIA, ids=[n for n, _ in CRITERIA])
def test_criterion(name, fn, capsys):
    try:
        ok, detail = fn()
    except AssertionError as exc:
        ok, detail = False, f"assertion failed {exc}"
    with capsys.disabled():
        print("\n" + _report(name, ok, detail))
    assert ok, detail


if __name__ == "__main__":
    failed = 0
    for name, fn in CRITERIA:
        ok, detail = fn()
        failed += not ok
        print(_report(name, ok, detail))
    sys.exit(1 if failed else 0)
