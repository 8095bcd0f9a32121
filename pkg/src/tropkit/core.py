"""Max-plus arithmetic, univariate tropical polynomials and their roots."""
from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from functools import total_ordering
from typing import Iterable, Mapping, Union

from ._exact import as_fraction, fraction_str


class PreconditionError(ValueError):
    """Raised when an operation's input contract is violated."""


@total_ordering
class TropicalNumber:
    """An element of the max-plus semiring: an exact rational or minus infinity.

    ``+`` is max and ``*`` is ordinary addition, so ordinary Python
    expressions read like tropical ones.
    """

    __slots__ = ("_v",)

    def __init__(self, value: Union[Fraction, int, str, None, "TropicalNumber"] = None):
        if isinstance(value, TropicalNumber):
            value = value._v
        if isinstance(value, str) and value.strip().lower() in {"-inf", "neg_inf", "-oo"}:
            value = None
        object.__setattr__(self, "_v", None if value is None else as_fraction(value))

    def __setattr__(self, name, value):
        raise AttributeError("TropicalNumber is immutable")

    @property
    def is_neg_inf(self) -> bool:
        return self._v is None

    @property
    def value(self) -> Fraction:
        if self._v is None:
            raise PreconditionError("NEG_INF has no finite value")
        return self._v

    def __add__(self, other):
        other = _coerce(other)
        if self._v is None:
            return other
        if other._v is None:
            return self
        return self if self._v >= other._v else other

    __radd__ = __add__

    def __mul__(self, other):
        other = _coerce(other)
        if self._v is None or other._v is None:
            return NEG_INF
        return TropicalNumber(self._v + other._v)

    __rmul__ = __mul__

    def __pow__(self, n: int):
        if n < 0:
            if self._v is None:
                raise ZeroDivisionError("NEG_INF has no tropical inverse")
            return TropicalNumber(self._v * n)
        if n == 0:
            return TropicalNumber(0)
        return NEG_INF if self._v is None else TropicalNumber(self._v * n)

    def __eq__(self, other):
        try:
            other = _coerce(other)
        except TypeError:
            return NotImplemented
        return self._v == other._v

    def __lt__(self, other):
        other = _coerce(other)
        if self._v is None:
            return other._v is not None
        if other._v is None:
            return False
        return self._v < other._v

    def __hash__(self):
        return hash(("trop", self._v))

    def __repr__(self):
        return "NEG_INF" if self._v is None else f"TropicalNumber({fraction_str(self._v)})"

    def __str__(self):
        return "-inf" if self._v is None else fraction_str(self._v)


def _coerce(x) -> TropicalNumber:
    if isinstance(x, TropicalNumber):
        return x
    if isinstance(x, (int, Fraction, str)):
        return TropicalNumber(x)
    raise TypeError(f"cannot interpret {x!r} as a tropical number")


NEG_INF = TropicalNumber(None)
TropicalScalar = TropicalNumber


def trop_add(x, y) -> TropicalNumber:
    return _coerce(x) + _coerce(y)


def trop_mul(x, y) -> TropicalNumber:
    return _coerce(x) * _coerce(y)


def dequantized_add(x, y, t) -> float:
    """``log_t(t^x + t^y)``, computed without overflow.

    The result lies in ``[max(x, y), max(x, y) + log_t 2]``.
    """
    t = float(t)
    if not t > 1:
        raise PreconditionError("dequantization base must satisfy t > 1")
    x, y = float(x), float(y)
    hi, lo = (x, y) if x >= y else (y, x)
    return hi + math.log1p(t ** (lo - hi)) / math.log(t)


@dataclass(frozen=True)
class TropicalRoot:
    location: TropicalNumber
    order: int


@dataclass(frozen=True)
class TropicalPoly:
    """Univariate tropical polynomial, stored as degree -> finite coefficient."""

    terms: Mapping[int, Fraction] = field(default_factory=dict)

    def __post_init__(self):
        clean = {}
        for k, a in dict(self.terms).items():
            if isinstance(a, TropicalNumber):
                if a.is_neg_inf:
                    continue
                a = a.value
            if int(k) < 0:
                raise PreconditionError("negative degree")
            clean[int(k)] = as_fraction(a)
        object.__setattr__(self, "terms", dict(sorted(clean.items())))

    @classmethod
    def from_coefficients(cls, coeffs: Iterable) -> "TropicalPoly":
        """Build from a dense list a_0, a_1, ... (``None`` or NEG_INF skip)."""
        return cls({i: a for i, a in enumerate(coeffs) if a is not None})

    @property
    def is_neg_inf(self) -> bool:
        return not self.terms

    @property
    def degree(self) -> int:
        if not self.terms:
            raise PreconditionError("the constant NEG_INF polynomial has no degree")
        return max(self.terms)

    @property
    def low_degree(self) -> int:
        if not self.terms:
            raise PreconditionError("the constant NEG_INF polynomial has no degree")
        return min(self.terms)

    def __call__(self, x) -> TropicalNumber:
        x = _coerce(x)
        best = NEG_INF
        for i, a in self.terms.items():
            best = best + TropicalNumber(a) * x ** i
        return best

    def __add__(self, other: "TropicalPoly") -> "TropicalPoly":
        out = dict(self.terms)
        for i, a in other.terms.items():
            out[i] = max(out[i], a) if i in out else a
        return TropicalPoly(out)

    def __mul__(self, other: "TropicalPoly") -> "TropicalPoly":
        out: dict[int, Fraction] = {}
        for i, a in self.terms.items():
            for j, b in other.terms.items():
                out[i + j] = max(out.get(i + j, a + b), a + b)
        return TropicalPoly(out)

    def __pow__(self, n: int) -> "TropicalPoly":
        out = TropicalPoly({0: 0})
        for _ in range(n):
            out = out * self
        return out

    def hull_terms(self) -> dict[int, Fraction]:
        """Terms on the upper convex hull of the points (i, a_i).

        These are exactly the monomials that are maximal somewhere, so two
        polynomials define the same function iff their hull terms agree.
        """
        pts = sorted(self.terms.items())
        hull: list[tuple[int, Fraction]] = []
        for p in pts:
            while len(hull) >= 2:
                (i0, a0), (i1, a1) = hull[-2], hull[-1]
                # drop the middle point when it is on or below the chord
                if (a1 - a0) * (p[0] - i0) <= (p[1] - a0) * (i1 - i0):
                    hull.pop()
                else:
                    break
            hull.append(p)
        return dict(hull)

    def function_equals(self, other: "TropicalPoly") -> bool:
        return self.hull_terms() == other.hull_terms()

    def __str__(self):
        if not self.terms:
            return "-inf"
        parts = []
        for i, a in self.terms.items():
            c = fraction_str(a)
            c = f"({c})" if a < 0 else c
            mono = "" if i == 0 else ("x" if i == 1 else f"x^{i}")
            parts.append(c if not mono else f"{c}*{mono}")
        return " + ".join(parts)


def roots(p: TropicalPoly) -> list[TropicalRoot]:
    """Roots with orders, ascending, NEG_INF first when present."""
    if p.is_neg_inf:
        raise PreconditionError("the constant NEG_INF polynomial has no roots")
    out = []
    low = p.low_degree
    if low > 0:
        out.append(TropicalRoot(NEG_INF, low))
    hull = sorted(p.hull_terms().items())
    for (i, a), (j, b) in zip(hull, hull[1:]):
        out.append(TropicalRoot(TropicalNumber((a - b) / (j - i)), j - i))
    return out


@dataclass(frozen=True)
class Factorization:
    leading: Fraction
    factors: tuple[tuple[TropicalNumber, int], ...]

    def expand(self) -> TropicalPoly:
        out = TropicalPoly({0: self.leading})
        for r, k in self.factors:
            lin = TropicalPoly({1: 0}) if r.is_neg_inf else TropicalPoly({0: r.value, 1: 0})
            out = out * lin ** k
        return out

    def __call__(self, x) -> TropicalNumber:
        x = _coerce(x)
        val = TropicalNumber(self.leading)
        for r, k in self.factors:
            val = val * (x + r) ** k
        return val

    def __str__(self):
        lead = fraction_str(self.leading)
        parts = [f"({lead})"]
        for r, k in self.factors:
            base = "x" if r.is_neg_inf else f"(x+{r})"
            parts.append(base if k == 1 else f"{base}^{k}")
        return "".join(parts)


def factor(p: TropicalPoly) -> Factorization:
    """Leading coefficient and roots with multiplicities."""
    rs = roots(p)
    return Factorization(p.terms[p.degree], tuple((r.location, r.order) for r in rs))
