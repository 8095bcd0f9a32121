"""Text syntax for tropical polynomials.

Terms are separated by ``+``; a term is an optional coefficient followed by
monomials in ``x`` and ``y``.  A missing coefficient means the tropical one
(that is, 0).  Accepted spellings include ``"0 + x + (-1)*x^2"``,
``"3+2x+2y+3xy+y^2+x^2"`` and ``"(1/2)*x*y^3"``.
"""
from __future__ import annotations

import re
from fractions import Fraction

from .core import TropicalPoly


class ParseError(ValueError):
    pass


_NUM = r"[-+]?(?:\d+(?:\.\d*)?|\.\d+)(?:/\d+)?"
_TERM = re.compile(
    rf"""^\s*
    (?:\(\s*(?P<pcoef>{_NUM})\s*\)|(?P<coef>{_NUM}))?
    \s*\*?\s*
    (?P<mono>(?:[xy](?:\s*\^\s*\d+)?\s*\*?\s*)*)
    \s*$""",
    re.VERBOSE,
)
_FACTOR = re.compile(r"([xy])(?:\s*\^\s*(\d+))?")


def _split_terms(text: str) -> list[str]:
    terms, depth, cur = [], 0, []
    prev = ""
    for ch in text:
        if ch == "(":
            depth += 1
        elif ch == ")":
            depth -= 1
            if depth < 0:
                raise ParseError(f"unbalanced parenthesis in {text!r}")
        # a '+' at the start, after '(' or after '^' is a sign, not a separator
        if ch == "+" and depth == 0 and prev.strip() not in {"", "(", "^"}:
            terms.append("".join(cur))
            cur = []
        else:
            cur.append(ch)
        if not ch.isspace():
            prev = ch
    if depth != 0:
        raise ParseError(f"unbalanced parenthesis in {text!r}")
    terms.append("".join(cur))
    return terms


def parse_terms(text: str, variables: str = "xy") -> dict[tuple[int, int], Fraction]:
    if not text or not text.strip():
        raise ParseError("empty polynomial")
    out: dict[tuple[int, int], Fraction] = {}
    for raw in _split_terms(text):
        if not raw.strip():
            raise ParseError(f"empty term in {text!r}")
        m = _TERM.match(raw)
        if not m:
            raise ParseError(f"cannot parse term {raw.strip()!r}")
        coef_txt = m.group("pcoef") or m.group("coef")
        mono = m.group("mono") or ""
        if coef_txt is None and not mono.strip():
            raise ParseError(f"cannot parse term {raw.strip()!r}")
        coef = Fraction(coef_txt) if coef_txt is not None else Fraction(0)
        i = j = 0
        for var, exp in _FACTOR.findall(mono):
            if var not in variables:
                raise ParseError(f"variable {var!r} not allowed here")
            e = int(exp) if exp else 1
            if var == "x":
                i += e
            else:
                j += e
        key = (i, j)
        # repeated monomials combine by tropical addition
        out[key] = max(out[key], coef) if key in out else coef
    return out


def parse_univariate(text: str) -> TropicalPoly:
    terms = parse_terms(text, variables="x")
    return TropicalPoly({i: a for (i, _), a in terms.items()})
