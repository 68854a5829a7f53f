"""
Integer Polynomials
Exact sparse polynomials in z and their truncations
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable, Mapping, Union

Number = int


def _clean(coeffs: Mapping[int, int]) -> dict[int, int]:
    """Drop zero coefficients and reject negative exponents."""
    out: dict[int, int] = {}
    for exp, coeff in coeffs.items():
        if exp < 0:
            raise ValueError(f"negative exponent {exp}")
        if coeff:
            out[int(exp)] = int(coeff)
    return out


@dataclass(frozen=True)
class IntPolynomial:
    """Polynomial in z with arbitrary-precision integer coefficients."""

    coeffs: Mapping[int, int] = field(default_factory=dict)

    def __post_init__(self):
        object.__setattr__(self, "coeffs", _clean(self.coeffs))

    # ========================================================================
    # CONSTRUCTORS
    # ========================================================================

    @classmethod
    def zero(cls) -> "IntPolynomial":
        return cls({})

    @classmethod
    def one(cls) -> "IntPolynomial":
        return cls({0: 1})

    @classmethod
    def monomial(cls, exp: int, coeff: int = 1) -> "IntPolynomial":
        return cls({exp: coeff})

    @classmethod
    def from_pairs(cls, pairs: Iterable[tuple[int, Union[int, str]]]) -> "IntPolynomial":
        """Build from [exponent, coefficient] pairs (coefficient may be a decimal string)."""
        out: dict[int, int] = {}
        for exp, coeff in pairs:
            out[int(exp)] = out.get(int(exp), 0) + int(coeff)
        return cls(out)

    # ========================================================================
    # QUERIES
    # ========================================================================

    def __getitem__(self, exp: int) -> int:
        return self.coeffs.get(exp, 0)

    def coefficient(self, exp: int) -> int:
        return self.coeffs.get(exp, 0)

    def is_zero(self) -> bool:
        return not self.coeffs

    @property
    def degree(self) -> int:
        """Degree; -1 for the zero polynomial."""
        return max(self.coeffs) if self.coeffs else -1

    @property
    def low_degree(self) -> int:
        """Smallest exponent with nonzero coefficient; -1 for zero."""
        return min(self.coeffs) if self.coeffs else -1

    def exponents(self) -> list[int]:
        return sorted(self.coeffs)

    def truncate(self, max_degree: int) -> "IntPolynomial":
        return IntPolynomial({e: c for e, c in self.coeffs.items() if e <= max_degree})

    # ========================================================================
    # ARITHMETIC
    # ========================================================================

    def __add__(self, other: "IntPolynomial") -> "IntPolynomial":
        out = dict(self.coeffs)
        for e, c in other.coeffs.items():
            out[e] = out.get(e, 0) + c
        return IntPolynomial(out)

    def __neg__(self) -> "IntPolynomial":
        return IntPolynomial({e: -c for e, c in self.coeffs.items()})

    def __sub__(self, other: "IntPolynomial") -> "IntPolynomial":
        return self + (-other)

    def __mul__(self, other: Union["IntPolynomial", int]) -> "IntPolynomial":
        if isinstance(other, int):
            return IntPolynomial({e: c * other for e, c in self.coeffs.items()})
        out: dict[int, int] = {}
        for e1, c1 in self.coeffs.items():
            for e2, c2 in other.coeffs.items():
                out[e1 + e2] = out.get(e1 + e2, 0) + c1 * c2
        return IntPolynomial(out)

    __rmul__ = __mul__

    def shift(self, k: int) -> "IntPolynomial":
        """Multiply by z^k."""
        return IntPolynomial({e + k: c for e, c in self.coeffs.items()})

    def mul_truncated(self, other: "IntPolynomial", max_degree: int) -> "IntPolynomial":
        out: dict[int, int] = {}
        for e1, c1 in self.coeffs.items():
            if e1 > max_degree:
                continue
            for e2, c2 in other.coeffs.items():
                if e1 + e2 <= max_degree:
                    out[e1 + e2] = out.get(e1 + e2, 0) + c1 * c2
        return IntPolynomial(out)

    def substitute_neg(self) -> "IntPolynomial":
        """p(-z), the polynomial of the mirror image."""
        return IntPolynomial({e: (-c if e % 2 else c) for e, c in self.coeffs.items()})

    # ========================================================================
    # ENCODING
    # ========================================================================

    def to_json(self) -> list[list]:
        """Ascending [exponent, coefficient-as-decimal-string] pairs."""
        return [[e, str(self.coeffs[e])] for e in sorted(self.coeffs)]

    def __str__(self) -> str:
        if not self.coeffs:
            return "0"
        terms = []
        for e in sorted(self.coeffs):
            c = self.coeffs[e]
            if e == 0:
                terms.append(f"{c}")
            else:
                mono = "z" if e == 1 else f"z^{e}"
                terms.append(mono if c == 1 else f"-{mono}" if c == -1 else f"{c}*{mono}")
        return " + ".join(terms).replace("+ -", "- ")

    def __eq__(self, other) -> bool:
        if isinstance(other, int):
            return self.coeffs == ({0: other} if other else {})
        if not isinstance(other, IntPolynomial):
            return NotImplemented
        return self.coeffs == other.coeffs

    def __hash__(self) -> int:
        return hash(tuple(sorted(self.coeffs.items())))


Z = IntPolynomial.monomial(1)


@dataclass(frozen=True)
class TruncatedSeries:
    """Power series in z known modulo z^(order+1)."""

    order: int
    coeffs: Mapping[int, int] = field(default_factory=dict)

    def __post_init__(self):
        kept = {e: c for e, c in _clean(self.coeffs).items() if e <= self.order}
        object.__setattr__(self, "coeffs", kept)

    @classmethod
    def from_polynomial(cls, poly: IntPolynomial, order: int) -> "TruncatedSeries":
        return cls(order, poly.coeffs)

    def coefficient(self, exp: int) -> int:
        if exp > self.order:
            raise ValueError(f"coefficient z^{exp} beyond truncation order {self.order}")
        return self.coeffs.get(exp, 0)

    def __getitem__(self, exp: int) -> int:
        return self.coefficient(exp)

    def as_polynomial(self) -> IntPolynomial:
        return IntPolynomial(self.coeffs)

    def __mul__(self, other: "TruncatedSeries") -> "TruncatedSeries":
        order = min(self.order, other.order)
        prod = self.as_polynomial().mul_truncated(other.as_polynomial(), order)
        return TruncatedSeries(order, prod.coeffs)

    def inverse(self) -> "TruncatedSeries":
        """Inverse of a series with constant term 1 (exact over the integers)."""
        if self.coeffs.get(0, 0) != 1:
            raise ValueError("series inversion needs constant term 1")
        inv = [0] * (self.order + 1)
        inv[0] = 1
        for k in range(1, self.order + 1):
            acc = 0
            for j in range(1, k + 1):
                acc += self.coeffs.get(j, 0) * inv[k - j]
            inv[k] = -acc
        return TruncatedSeries(self.order, dict(enumerate(inv)))

    def divide(self, other: "TruncatedSeries") -> "TruncatedSeries":
        return self * other.inverse()

    def to_json(self) -> list[list]:
        return [[e, str(self.coeffs[e])] for e in sorted(self.coeffs)]

    def __eq__(self, other) -> bool:
        if not isinstance(other, TruncatedSeries):
            return NotImplemented
        return self.order == other.order and dict(self.coeffs) == dict(other.coeffs)

    def __hash__(self) -> int:
        return hash((self.order, tuple(sorted(self.coeffs.items()))))
