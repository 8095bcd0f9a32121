import itertools
from math import comb, factorial

import pytest
from hypothesis import given, settings, strategies as st

from tropkit import LaurentQ, PreconditionError
from tropkit.floor import (
    FloorDiagram, automorphism_count, count_markings, diagram_multiplicities,
    enumerate_diagrams, linear_extensions, marked_counts, max_genus,
    orbit_count_markings, refined_invariant,
)


def kontsevich(d: int) -> int:
    """Rational plane curve counts from Kontsevich's recursion."""
    N = {1: 1}
    for n in range(2, d + 1):
        total = 0
        for a in range(1, n):
            b = n - a
            total += N[a] * N[b] * a * a * b * (b * comb(3 * n - 4, 3 * a - 2) - a * comb(3 * n - 4, 3 * a - 1))
        N[n] = total
    return N[d]


# --------------------------------------------------------- brute-force diagrams

def _canon(d, edges):
    best = None
    for perm in itertools.permutations(range(d)):
        key = tuple(sorted((perm[s], perm[t], w) for s, t, w in edges))
        if best is None or key < best:
            best = key
    return best


def _connected(d, edges):
    seen, stack = {0}, [0]
    while stack:
        v = stack.pop()
        for s, t, _ in edges:
            for a, b in ((s, t), (t, s)):
                if a == v and b not in seen:
                    seen.add(b)
                    stack.append(b)
    return len(seen) == d


def brute_diagrams(d, g):
    cands = [(s, t, w) for s in range(d) for t in range(s + 1, d) for w in range(1, d)]
    found = set()
    for edges in itertools.combinations_with_replacement(cands, d - 1 + g):
        if not _connected(d, edges):
            continue
        ok = True
        for v in range(d):
            legs = 1 + sum(w for s, _, w in edges if s == v) - sum(w for _, t, w in edges if t == v)
            if legs < 0:
                ok = False
        if ok and sum(1 + sum(w for s, _, w in edges if s == v) - sum(w for _, t, w in edges if t == v)
                      for v in range(d)) == d:
            found.add(_canon(d, edges))
    return found


@pytest.mark.parametrize("d,g", [(d, g) for d in range(1, 5) for g in range(max_genus(d) + 1)])
def test_enumeration_matches_brute_force(d, g):
    ours = enumerate_diagrams(d, g)
    keys = [_canon(d, D.edges) for D in ours]
    assert len(keys) == len(set(keys))
    assert set(keys) == brute_diagrams(d, g)
    for D in ours:
        D.validate()
        assert all(s < t for s, t, _ in D.edges)


# ------------------------------------------------------------------ markings

def _brute_extensions(preds):
    n = len(preds)
    count = 0
    for order in itertools.permutations(range(n)):
        pos = {e: k for k, e in enumerate(order)}
        if all(pos[p] < pos[e] for e in range(n) for p in range(n) if preds[e] >> p & 1):
            count += 1
    return count


def test_linear_extensions_small_posets():
    assert linear_extensions([0, 0, 0]) == 6
    assert linear_extensions([0, 1, 2]) == 1                 # chain 0 < 1 < 2
    assert linear_extensions([0, 0, 0b11, 0b11]) == 4
    for preds in ([0, 1, 1, 0b110], [0, 0, 1, 0b10, 0b1100], [0, 1, 0, 0b101]):
        assert linear_extensions(preds) == _brute_extensions(preds)


@given(st.integers(1, 7).flatmap(lambda n: st.lists(st.integers(0, 2 ** n - 1), min_size=n, max_size=n)))
@settings(max_examples=60, deadline=None)
def test_linear_extensions_random(raw):
    # keep only relations to earlier elements so the relation is acyclic
    preds = [m & ((1 << k) - 1) for k, m in enumerate(raw)]
    assert linear_extensions(preds) == _brute_extensions(preds)


@pytest.mark.parametrize("d,g", [(1, 0), (2, 0), (3, 1), (3, 0)])
def test_markings_against_orbit_enumeration(d, g):
    for D in enumerate_diagrams(d, g):
        assert count_markings(D) == orbit_count_markings(D)


def test_markings_against_orbits_degree_four():
    for g in (3, 2):
        for D in enumerate_diagrams(4, g):
            assert count_markings(D) == orbit_count_markings(D)


@pytest.mark.parametrize("d,g,expected", [
    (1, 0, [1]), (2, 0, [1]), (3, 1, [1]), (3, 0, [1, 5, 3]),
    (4, 3, [1]), (4, 2, [7, 2, 5, 1, 3]),
    (4, 1, [15, 1, 6, 26, 9, 4, 7, 2, 21, 6, 21]),
    (4, 0, [35, 40, 8, 15, 6, 1, 45, 3, 18, 102, 15, 15]),
])
def test_marking_counts(d, g, expected):
    assert sorted(m.markings for m in marked_counts(d, g)) == sorted(expected)


def test_multi_edge_automorphism():
    D = FloorDiagram(2, 1, ((0, 1, 1), (0, 1, 1)), (0, 0))
    with pytest.raises(PreconditionError):
        D.validate()     # degree two has no genus-one diagrams
    D = FloorDiagram(3, 1, ((0, 1, 1), (0, 1, 1), (1, 2, 1)), (0, 0, 0))
    D.validate()
    # the three legs at vertex 0 permute freely and the parallel edges swap
    assert automorphism_count(D) == 3 * 2 * 2
    assert count_markings(D) == orbit_count_markings(D)


# ------------------------------------------------------------- multiplicities

def test_multiplicities_of_weights():
    D = next(D for D in enumerate_diagrams(3, 0) if any(w == 2 for _, _, w in D.edges))
    M = diagram_multiplicities(D)
    assert M.m_C == 4 and M.m_R == 0
    assert M.G == LaurentQ({-2: 1, 0: 2, 2: 1})
    assert M.G.at_one() == M.m_C and M.G.at_minus_one() == M.m_R


@pytest.mark.parametrize("d", [3, 4, 5])
def test_g_specializes_to_multiplicities(d):
    for g in range(max_genus(d) + 1):
        for mc in marked_counts(d, g):
            M = diagram_multiplicities(mc.diagram)
            assert M.G.at_one() == M.m_C
            assert M.G.at_minus_one() == M.m_R


# ----------------------------------------------------------- refined counts

GOLDEN = {
    (3, 0): LaurentQ({-2: 1, 0: 10, 2: 1}),
    (4, 2): LaurentQ({-2: 3, 0: 21, 2: 3}),
    (4, 1): LaurentQ({-4: 3, -2: 33, 0: 153, 2: 33, 4: 3}),
    (4, 0): LaurentQ({-6: 1, -4: 13, -2: 94, 0: 404, 2: 94, 4: 13, 6: 1}),
}


@pytest.mark.parametrize("key", sorted(GOLDEN))
def test_refined_invariants(key):
    assert refined_invariant(*key) == GOLDEN[key]


def test_specializations():
    assert refined_invariant(3, 0).at_one() == 12
    assert refined_invariant(3, 0).at_minus_one() == 8
    assert refined_invariant(4, 0).at_one() == 620
    assert refined_invariant(4, 0).at_minus_one() == 240
    assert refined_invariant(4, 1).at_one() == 225
    assert refined_invariant(4, 2).at_one() == 27 == 3 * (4 - 1) ** 2


@pytest.mark.parametrize("d", [1, 2, 3, 4, 5])
def test_rational_counts_match_kontsevich(d):
    assert refined_invariant(d, 0).at_one() == kontsevich(d)


# frozen from the independent brute-force enumeration above and the recursion
DEGREE_FIVE = {0: 87304, 1: 87192, 2: 36855, 3: 7915, 4: 882, 5: 48, 6: 1}


def test_degree_five_counts():
    assert {g: refined_invariant(5, g).at_one() for g in range(7)} == DEGREE_FIVE
    assert refined_invariant(5, 0).at_minus_one() == 18264


@pytest.mark.parametrize("d", [3, 4, 5])
def test_closed_forms(d):
    gmax = max_genus(d)
    assert refined_invariant(d, gmax) == LaurentQ.one()
    # (d-1) [ (d-2)/2 q^-1 + 2d-1 + (d-2)/2 q ], with integer coefficients after expansion
    half = (d - 2) * (d - 1) // 2
    assert refined_invariant(d, gmax - 1) == LaurentQ({-2: half, 0: (d - 1) * (2 * d - 1), 2: half})
    for g in range(gmax + 1):
        G = refined_invariant(d, g)
        assert G.top_exponent() == gmax - g
        assert G.coefficient(G.top_exponent()) == comb(gmax, g)
        assert G.is_palindromic()


def test_element_count():
    for d in (2, 3, 4):
        for g in range(max_genus(d) + 1):
            for D in enumerate_diagrams(d, g):
                assert d + len(D.edges) + len(D.legs) == 3 * d - 1 + g


def test_marking_total_bounded_by_factorial():
    # a marking is an ordering of the 3d-1+g elements
    for D in enumerate_diagrams(3, 0):
        assert count_markings(D) <= factorial(3 * 3 - 1)


def test_json_round_trip():
    for D in enumerate_diagrams(4, 1):
        assert FloorDiagram.from_json(D.to_json()) == D


def test_invalid_diagram_json():
    with pytest.raises(PreconditionError):
        FloorDiagram.from_json({"d": 2, "g": 0, "edges": [{"s": 0, "t": 1, "w": 2}], "legs": [0, 1]})


@pytest.mark.parametrize("d,g", [(0, 0), (7, 0), (3, -1)])
def test_out_of_range(d, g):
    with pytest.raises(PreconditionError):
        refined_invariant(d, g)


def test_genus_above_max_is_empty():
    assert enumerate_diagrams(3, 2) == []
    assert refined_invariant(3, 2) == LaurentQ()


def test_workers_agree():
    assert refined_invariant(4, 0, workers=2) == refined_invariant(4, 0, workers=1)
