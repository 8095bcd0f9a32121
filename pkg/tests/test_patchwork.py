import itertools
import random
from fractions import Fraction

import pytest

from tropkit import PreconditionError
from tropkit._exact import lattice_points_in
from tropkit.patchwork import (
    cycle_basis, edge_factor, genus, is_maximal_twist, is_twist_admissible, is_type_one,
    patchwork, ribbon_orientable, twists_from_signs, viro_quadrant,
)
from tropkit.plane import BivariatePoly, is_nonsingular, tropical_curve

FLIPS = ((1, 1), (1, -1), (-1, 1), (-1, -1))


def curve_on(points, bias=lambda i, j: -(i * i + i * j + j * j), seed=0, noise=0):
    rng = random.Random(seed)
    P = BivariatePoly({(i, j): Fraction(bias(i, j)) + Fraction(rng.randint(-noise, noise), 7) for i, j in points})
    return tropical_curve(P)


LINE = tropical_curve(BivariatePoly.parse("0+x+y"))
CONIC = curve_on([(i, j) for i in range(3) for j in range(3 - i)])
CUBIC = curve_on([(i, j) for i in range(4) for j in range(4 - i)])
STRIP = curve_on([(i, j) for i in range(4) for j in range(2)])          # 8 lattice points, genus 0
GENUS_TWO = curve_on([(i, j) for i in range(4) for j in range(3)])      # interior (1,1), (2,1)

SMALL = {"line": LINE, "conic": CONIC, "strip": STRIP,
         "rect": curve_on([(i, j) for i in range(3) for j in range(2)])}


def test_fixtures_are_nonsingular():
    for C in (LINE, CONIC, CUBIC, STRIP, GENUS_TWO, *SMALL.values()):
        assert is_nonsingular(C)
    assert genus(CUBIC) == 1 and genus(GENUS_TWO) == 2 and genus(STRIP) == 0


# ------------------------------------------------------------------ line

def test_line_patchwork():
    R = patchwork(LINE, [])
    assert len(R.arcs) == 3 and R.component_count == 1
    target = sorted([(1, 1), (-1, 1), (-1, -1)])
    orbit = {tuple(sorted((s[0] * d[0], s[1] * d[1]) for s in target)) for d in FLIPS}
    assert tuple(R.arc_signs()) in orbit
    assert R.canonical_signs == min(orbit)
    assert R.type_I and R.maximal and R.orientable_quotient
    assert R.euler_char_quotient == 1


def test_tree_curves_admit_everything():
    for C in (CONIC, STRIP):
        bounded = C.bounded_edges()
        for r in range(len(bounded) + 1):
            for T in itertools.combinations(bounded, r):
                assert is_twist_admissible(C, T)


def test_empty_twist_is_admissible_and_maximal():
    for C in (LINE, CONIC, CUBIC, STRIP, GENUS_TWO):
        assert is_twist_admissible(C, [])
        assert is_maximal_twist(C, [])
        R = patchwork(C, [])
        assert R.maximal and R.component_count == genus(C) + 1


def test_unbounded_twist_rejected():
    ray = next(k for k, e in enumerate(LINE.edges) if not e.bounded)
    with pytest.raises(PreconditionError):
        is_twist_admissible(LINE, [ray])


# ----------------------------------------------------- admissibility oracle

def _admissible_by_cycles(C, T, cycle):
    su = sum(C.edges[k].direction[0] for k in cycle if k in T)
    sv = sum(C.edges[k].direction[1] for k in cycle if k in T)
    return su % 2 == 0 and sv % 2 == 0


def test_cubic_cycle_subsets():
    (cycle,) = cycle_basis(CUBIC)
    assert len(cycle) == 6
    for r in range(len(cycle) + 1):
        for T in itertools.combinations(sorted(cycle), r):
            assert is_twist_admissible(CUBIC, T) == _admissible_by_cycles(CUBIC, set(T), cycle)
    # a single twisted cycle edge never works
    assert not any(is_twist_admissible(CUBIC, [k]) for k in cycle)


def test_two_twists_on_cycle_give_type_one():
    (cycle,) = cycle_basis(CUBIC)
    pairs = [T for T in itertools.combinations(sorted(cycle), 2) if is_twist_admissible(CUBIC, T)]
    assert pairs
    for T in pairs:
        R = patchwork(CUBIC, T)
        assert R.type_I and R.orientable_quotient


# ---------------------------------------------------------------- edge rule

def _check_edge_rule(C, R):
    arc_sign = {}
    for a in R.arcs:
        for n in a.nodes:
            arc_sign[n] = a.sign
    for k, e in enumerate(C.edges):
        f = edge_factor(e.direction)
        for v in e.vertices:
            s0, s1 = arc_sign[(v, k, 0)], arc_sign[(v, k, 1)]
            assert (s0[0] * f[0], s0[1] * f[1]) == s1


def _brute_sign_solutions(C, R):
    """Count sign assignments to arcs obeying the edge rule by exhaustive search."""
    arc_index = {n: i for i, a in enumerate(R.arcs) for n in a.nodes}
    rules = []
    for k, e in enumerate(C.edges):
        for v in e.vertices:
            rules.append((arc_index[(v, k, 0)], arc_index[(v, k, 1)], edge_factor(e.direction)))
    count = 0
    for choice in itertools.product(FLIPS, repeat=len(R.arcs)):
        if all((choice[x][0] * f[0], choice[x][1] * f[1]) == choice[y] for x, y, f in rules):
            count += 1
    return count


def test_conic_signs_forced_up_to_symmetry():
    R = patchwork(CONIC, [])
    _check_edge_rule(CONIC, R)
    assert _brute_sign_solutions(CONIC, R) == 4


def _all_twist_sets(C, limit=None):
    bounded = C.bounded_edges()
    for r in range(len(bounded) + 1):
        for T in itertools.combinations(bounded, r):
            if is_twist_admissible(C, T):
                yield T


@pytest.mark.parametrize("name", ["cubic", "genus_two"])
def test_haas_and_type_one(name):
    C = {"cubic": CUBIC, "genus_two": GENUS_TWO}[name]
    seen = maximal = 0
    for T in _all_twist_sets(C):
        R = patchwork(C, T)
        _check_edge_rule(C, R)
        assert R.type_I == R.orientable_quotient == ribbon_orientable(C, T) == is_type_one(C, T)
        assert R.maximal == (R.component_count == genus(C) + 1)
        assert R.component_count <= genus(C) + 1
        seen += 1
        maximal += R.maximal
    assert seen > 10 and 0 < maximal < seen


# ------------------------------------------------------------ signs -> twists

def _sign_distributions(C):
    pts = list(C.subdivision.cells0)
    for bits in itertools.product((1, -1), repeat=len(pts)):
        yield dict(zip(pts, bits))


@pytest.mark.parametrize("name", sorted(SMALL))
def test_signs_give_admissible_twists_and_match_viro(name):
    C = SMALL[name]
    assert len(C.subdivision.cells0) <= 8
    for signs in _sign_distributions(C):
        T = twists_from_signs(C, signs)
        assert is_twist_admissible(C, T)
        R = patchwork(C, T)
        # Viro's rule fixes every arc's quadrant; the patchwork agrees up to one axial flip
        flips = set()
        for a in R.arcs:
            for v, p in a.sectors:
                tri = C.subdivision.cells2[C.vertex_cells[v]].polygon
                q = viro_quadrant(signs, p, tri)
                flips.add((q[0] * a.sign[0], q[1] * a.sign[1]))
        assert len(flips) == 1


def test_signs_on_cubic_admissible():
    rng = random.Random(3)
    pts = list(CUBIC.subdivision.cells0)
    for _ in range(300):
        signs = {p: rng.choice((1, -1)) for p in pts}
        assert is_twist_admissible(CUBIC, twists_from_signs(CUBIC, signs))


def test_line_has_no_twists():
    for signs in _sign_distributions(LINE):
        assert twists_from_signs(LINE, signs) == frozenset()


def _edge_case(C, k):
    sub = C.subdivision
    e = C.edges[k]
    apex = []
    for v in e.vertices:
        (p,) = [q for q in sub.cells2[C.vertex_cells[v]].polygon if q not in e.dual]
        apex.append(p)
    case_a = (apex[0][0] % 2, apex[0][1] % 2) != (apex[1][0] % 2, apex[1][1] % 2)
    return case_a, apex


def test_conic_all_positive():
    signs = {p: 1 for p in CONIC.subdivision.cells0}
    T = twists_from_signs(CONIC, signs)
    for k in CONIC.bounded_edges():
        case_a, _ = _edge_case(CONIC, k)
        assert (k in T) == case_a


def test_flipping_one_sign():
    rng = random.Random(8)
    for C in (CONIC, CUBIC, STRIP):
        pts = list(C.subdivision.cells0)
        for _ in range(40):
            signs = {p: rng.choice((1, -1)) for p in pts}
            p = rng.choice(pts)
            flipped = dict(signs)
            flipped[p] = -signs[p]
            changed = twists_from_signs(C, signs) ^ twists_from_signs(C, flipped)
            expected = set()
            for k in C.bounded_edges():
                case_a, apex = _edge_case(C, k)
                if p in apex or (case_a and p in C.edges[k].dual):
                    expected.add(k)
            assert changed == expected


def test_missing_signs_rejected():
    with pytest.raises(PreconditionError):
        twists_from_signs(CONIC, {(0, 0): 1})


def test_singular_curve_rejected():
    C = tropical_curve(BivariatePoly.parse("0 + x + y^2 + (-1)*x^2"))
    with pytest.raises(PreconditionError):
        patchwork(C, [])


def test_lattice_points_helper_consistent():
    # the subdivision of a non-singular curve uses every lattice point
    for C in (CONIC, CUBIC, GENUS_TWO):
        assert set(C.subdivision.cells0) == set(lattice_points_in(C.subdivision.newton))
