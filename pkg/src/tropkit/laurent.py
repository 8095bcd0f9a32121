"""Laurent polynomials in q^(1/2) with integer coefficients.

Exponents are stored doubled, so the key ``k`` stands for ``q^(k/2)``.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Mapping


@dataclass(frozen=True)
class LaurentQ:
    coeffs: Mapping[int, int] = field(default_factory=dict)

    def __post_init__(self):
        clean = {int(k): int(v) for k, v in dict(self.coeffs).items() if v != 0}
        object.__setattr__(self, "coeffs", dict(sorted(clean.items())))

    @classmethod
    def one(cls) -> "LaurentQ":
        return cls({0: 1})

    @classmethod
    def quantum(cls, m: int) -> "LaurentQ":
        """[m]_q = (q^(m/2) - q^(-m/2)) / (q^(1/2) - q^(-1/2)), expanded."""
        if m < 1:
            raise ValueError("quantum integers need m >= 1")
        return cls({k: 1 for k in range(-(m - 1), m, 2)})

    def __add__(self, other: "LaurentQ") -> "LaurentQ":
        out = dict(self.coeffs)
        for k, v in other.coeffs.items():
            out[k] = out.get(k, 0) + v
        return LaurentQ(out)

    def __mul__(self, other):
        if isinstance(other, int):
            return LaurentQ({k: v * other for k, v in self.coeffs.items()})
        out: dict[int, int] = {}
        for a, x in self.coeffs.items():
            for b, y in other.coeffs.items():
                out[a + b] = out.get(a + b, 0) + x * y
        return LaurentQ(out)

    __rmul__ = __mul__

    def __pow__(self, n: int) -> "LaurentQ":
        out = LaurentQ.one()
        for _ in range(n):
            out = out * self
        return out

    def at_one(self) -> int:
        return sum(self.coeffs.values())

    def at_minus_one(self):
        """Value at q = -1 with q^(1/2) read as i.

        Returns an int when the imaginary part cancels, otherwise a complex.
        """
        re_part = im_part = 0
        for k, v in self.coeffs.items():
            r = k % 4
            if r == 0:
                re_part += v
            elif r == 1:
                im_part += v
            elif r == 2:
                re_part -= v
            else:
                im_part -= v
        return re_part if im_part == 0 else complex(re_part, im_part)

    def is_palindromic(self) -> bool:
        return all(self.coeffs.get(-k) == v for k, v in self.coeffs.items())

    def coefficient(self, exponent) -> int:
        """Coefficient of q^exponent (exponent may be a half-integer)."""
        k = Fraction(exponent) * 2
        if k.denominator != 1:
            raise ValueError("exponents must be multiples of 1/2")
        return self.coeffs.get(int(k), 0)

    def top_exponent(self) -> Fraction:
        return Fraction(max(self.coeffs), 2)

    def to_json(self) -> dict[str, int]:
        return {str(k): v for k, v in self.coeffs.items()}

    @classmethod
    def from_json(cls, data: Mapping[str, int]) -> "LaurentQ":
        return cls({int(k): int(v) for k, v in data.items()})

    def __str__(self):
        if not self.coeffs:
            return "0"
        pieces: list[str] = []
        for k, v in self.coeffs.items():
            if k == 0:
                mono = ""
            elif k == 2:
                mono = "q"
            elif k % 2 == 0:
                mono = f"q^{k // 2}"
            else:
                mono = f"q^({k}/2)"
            mag = abs(v)
            body = str(mag) if not mono else (mono if mag == 1 else f"{mag}{mono}")
            if not pieces:
                pieces.append(body if v > 0 else f"-{body}")
            else:
                pieces.append(("+ " if v > 0 else "- ") + body)
        return " ".join(pieces)
