"""Golden values and a report comparing them with freshly computed ones."""
from __future__ import annotations

from collections import Counter
from dataclasses import dataclass
from typing import Any, Callable

from . import fan, floor, graphs
from .laurent import LaurentQ


def _laurent(*pairs: tuple[int, int]) -> LaurentQ:
    """Build from (integer exponent, coefficient) pairs."""
    return LaurentQ({2 * e: c for e, c in pairs})


GOLDEN_G = {
    (3, 0): _laurent((-1, 1), (0, 10), (1, 1)),
    (4, 2): _laurent((-1, 3), (0, 21), (1, 3)),
    (4, 1): _laurent((-2, 3), (-1, 33), (0, 153), (1, 33), (2, 3)),
    (4, 0): _laurent((-3, 1), (-2, 13), (-1, 94), (0, 404), (1, 94), (2, 13), (3, 1)),
}

# (d, g) -> (complex count N, real count W or None)
GOLDEN_COUNTS = {
    (3, 0): (12, 8),
    (4, 0): (620, 240),
    (4, 1): (225, None),
    (4, 2): (27, None),
}

# reference marking counts for each (d, g), as multisets
GOLDEN_MARKINGS = {
    (1, 0): [1],
    (2, 0): [1],
    (3, 1): [1],
    (3, 0): [1, 5, 3],
    (4, 3): [1],
    (4, 2): [7, 2, 5, 1, 3],
    (4, 1): [15, 1, 6, 26, 9, 4, 7, 2, 21, 6, 21],
    (4, 0): [35, 40, 8, 15, 6, 1, 45, 3, 18, 102, 15, 15],
}

CUSP_CUBIC = fan.FanCurve.from_json({"n": 3, "rays": [
    {"dir": [-2, -3, 0], "w": 1}, {"dir": [0, 1, 1], "w": 1}, {"dir": [2, 2, -1], "w": 1}]})
DIAGONAL_LINE = fan.FanCurve.from_json({"n": 3, "rays": [
    {"dir": [1, 1, 0], "w": 1}, {"dir": [-1, -1, 0], "w": 1}]})


@dataclass(frozen=True)
class Check:
    name: str
    expected: Any
    computed: Any

    @property
    def passed(self) -> bool:
        return self.expected == self.computed

    def to_json(self) -> dict:
        def show(x):
            return str(x) if isinstance(x, LaurentQ) else x
        return {"name": self.name, "expected": show(self.expected), "computed": show(self.computed),
                "pass": self.passed}


def _theta() -> graphs.MetricGraph:
    return graphs.MetricGraph(("finite", "finite"), ((0, 1, 1), (0, 1, 2), (0, 1, 3)))


def _checks(workers: int | None) -> list[Callable[[], Check]]:
    out: list[Callable[[], Check]] = []
    for (d, g), G in GOLDEN_G.items():
        out.append(lambda d=d, g=g, G=G: Check(f"G_{d},{g}", G, floor.refined_invariant(d, g, workers)))
    for (d, g), (N, W) in GOLDEN_COUNTS.items():
        out.append(lambda d=d, g=g, N=N: Check(f"N_{d},{g}", N, floor.refined_invariant(d, g, workers).at_one()))
        if W is not None:
            out.append(lambda d=d, g=g, W=W: Check(
                f"W_{d},{g}", W, floor.refined_invariant(d, g, workers).at_minus_one()))
    for (d, g), marks in GOLDEN_MARKINGS.items():
        out.append(lambda d=d, g=g, marks=marks: Check(
            f"markings_{d},{g}", sorted(marks), sorted(m.markings for m in floor.marked_counts(d, g, workers))))
    P = fan.FanPlane(3)
    out += [
        lambda: Check("(L.L)_0", -1, fan.local_intersection(P, DIAGONAL_LINE, DIAGONAL_LINE)),
        lambda: Check("(C.C)_0", -4, fan.local_intersection(P, CUSP_CUBIC, CUSP_CUBIC)),
        lambda: Check("(C.L)_0", -1, fan.local_intersection(P, CUSP_CUBIC, DIAGONAL_LINE)),
        lambda: Check("deg C", 3, fan.fan_degree(CUSP_CUBIC)),
        lambda: Check("adjunction C", -2, fan.adjunction_bound(P, CUSP_CUBIC)),
    ]
    # the affine line in T^2: two ends at infinity, one open end
    affine_line = graphs.line_graph((False, False, True))
    out += [
        lambda: Check("diamond affine line", [1, 0, 0, 0],
                      list(graphs.curve_cohomology(affine_line, open_model=True).diamond())),
        lambda: Check("diamond projective line", [1, 0, 0, 1],
                      list(graphs.curve_cohomology(graphs.line_graph((False, False, False))).diamond())),
        lambda: Check("h10 punctured line", 2,
                      graphs.curve_cohomology(graphs.line_graph((True, True, True)), open_model=True).h[1, 0]),
        lambda: Check("diamond genus 1", [1, 1, 1, 1], list(graphs.curve_cohomology(graphs.cycle_graph(3)).diamond())),
        lambda: Check("diamond genus 2", [1, 2, 2, 1], list(graphs.curve_cohomology(_theta()).diamond())),
    ]
    return out


def reproduce(workers: int | None = None) -> list[Check]:
    return [make() for make in _checks(workers)]


def report(checks: list[Check]) -> dict:
    tally = Counter(c.passed for c in checks)
    return {"passed": tally[True], "failed": tally[False], "checks": [c.to_json() for c in checks]}
