"""
Exact integer polynomials in either the monomial or the falling-factorial basis.
X_(i) = X(X-1)...(X-i+1).
"""
import json
from dataclasses import dataclass
from enum import Enum
from functools import lru_cache
from typing import Sequence, Tuple

from .stirling import stirling_row
from ..utils.errors import ValidationError


class Basis(str, Enum):
    MONOMIAL = "monomial"
    FALLING_FACTORIAL = "falling_factorial"


class PolynomialKind(str, Enum):
    CHI = "chi"
    IND = "ind"
    MATCH = "match"


def _trim(coeffs: Sequence[int]) -> Tuple[int, ...]:
    coeffs = list(coeffs)
    while coeffs and coeffs[-1] == 0:
        coeffs.pop()
    return tuple(int(c) for c in coeffs)


@lru_cache(maxsize=None)
def falling_factorial_coeffs(i: int) -> Tuple[int, ...]:
    """Monomial coefficients of X_(i) (signed Stirling numbers of the first kind)"""
    if i == 0:
        return (1,)
    prev = falling_factorial_coeffs(i - 1)
    # multiply by (X - (i-1))
    out = [0] * (len(prev) + 1)
    for j, c in enumerate(prev):
        out[j + 1] += c
        out[j] -= (i - 1) * c
    return tuple(out)


@dataclass(frozen=True, eq=False)
class GraphPolynomial:
    """
    Coefficient vector coeffs[0..deg] in the given basis, trailing zeros trimmed.
    Equality and hashing go through the monomial basis.
    """
    basis: Basis
    coeffs: Tuple[int, ...]

    def __post_init__(self):
        object.__setattr__(self, "coeffs", _trim(self.coeffs))

    @classmethod
    def monomial(cls, coeffs: Sequence[int]) -> "GraphPolynomial":
        return cls(Basis.MONOMIAL, tuple(coeffs))

    @classmethod
    def falling(cls, coeffs: Sequence[int]) -> "GraphPolynomial":
        return cls(Basis.FALLING_FACTORIAL, tuple(coeffs))

    @property
    def degree(self) -> int:
        """-1 for the zero polynomial"""
        return len(self.coeffs) - 1

    def is_zero(self) -> bool:
        return not self.coeffs

    def monomial_coeffs(self) -> Tuple[int, ...]:
        return to_monomial(self).coeffs

    def evaluate(self, x: int) -> int:
        if self.basis == Basis.MONOMIAL:
            total = 0
            for c in reversed(self.coeffs):
                total = total * x + c
            return total
        total, ff = 0, 1
        for i, c in enumerate(self.coeffs):
            total += c * ff
            ff *= x - i
        return total

    def __eq__(self, other) -> bool:
        if not isinstance(other, GraphPolynomial):
            return NotImplemented
        if self.basis == other.basis:
            return self.coeffs == other.coeffs
        return self.monomial_coeffs() == other.monomial_coeffs()

    def __hash__(self) -> int:
        return hash(self.monomial_coeffs())

    def to_dict(self) -> dict:
        # decimal strings keep big integers exact in any JSON reader
        return {"basis": self.basis.value, "coeffs": [str(c) for c in self.coeffs]}

    def to_json(self) -> str:
        return json.dumps(self.to_dict())

    @classmethod
    def from_json(cls, content: str) -> "GraphPolynomial":
        try:
            data = json.loads(content)
            return cls(Basis(data["basis"]), tuple(int(c) for c in data["coeffs"]))
        except (ValueError, KeyError, TypeError) as e:
            raise ValidationError(f"invalid polynomial JSON: {e}")

    def __str__(self) -> str:
        if self.is_zero():
            return "0"
        symbol = "X" if self.basis == Basis.MONOMIAL else "X_"
        terms = []
        for i in range(len(self.coeffs) - 1, -1, -1):
            c = self.coeffs[i]
            if c == 0:
                continue
            if i == 0:
                body = str(abs(c))
            else:
                power = ("X" if i == 1 else f"X^{i}") if symbol == "X" else f"X_({i})"
                body = power if abs(c) == 1 else f"{abs(c)}*{power}"
            sign = "-" if c < 0 else "+"
            terms.append((sign, body))
        first_sign, first_body = terms[0]
        text = ("-" if first_sign == "-" else "") + first_body
        for sign, body in terms[1:]:
            text += f" {sign} {body}"
        return text


def to_monomial(p: GraphPolynomial) -> GraphPolynomial:
    """Expand falling factorials; monomial input is returned unchanged"""
    if p.basis == Basis.MONOMIAL:
        return p
    out = [0] * max(len(p.coeffs), 1)
    for i, b in enumerate(p.coeffs):
        if b:
            for j, c in enumerate(falling_factorial_coeffs(i)):
                out[j] += b * c
    return GraphPolynomial.monomial(out)


def to_falling_factorial(p: GraphPolynomial) -> GraphPolynomial:
    """X^j = sum_i S(j,i) X_(i); falling-factorial input is returned unchanged"""
    if p.basis == Basis.FALLING_FACTORIAL:
        return p
    out = [0] * max(len(p.coeffs), 1)
    for j, a in enumerate(p.coeffs):
        if a:
            row = stirling_row(j)
            for i in range(j + 1):
                out[i] += a * row[i]
    return GraphPolynomial.falling(out)
