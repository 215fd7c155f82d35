"""
Upper-bound ratio sequences for log B_P(n) / log H(n) and their exact-log companions.

Closed forms (general denominator 2^n, r-uniform denominator C(n,r)):

    chi:   ((n^2 + n) log2 n + n^2 log2 e) / 2^n
    ind:   (n(n+1)/2 ln(n e) + n ln n) / (2^n ln 2)
    match: (m(m+1)/2 ln(n e) + n ln n) / (2^n ln 2),  m = floor(n/k)

The exact companion replaces the numerator by log2(product bound * n!).
"""
import logging
import math
import re
from dataclasses import dataclass
from typing import Iterable, Optional

from mpmath import mp

from .products import log2_int, product_bound
from .table import BoundTable
from ..polynomials.graph_polynomial import PolynomialKind
from ..utils.config import get_settings
from ..utils.errors import BudgetExceededError, ValidationError

logger = logging.getLogger(__name__)

PRECISION_BITS = 128

_KIND_PATTERN = re.compile(r"^(chi|ind|match)(_exact)?_(general|uniform)(?:\(?(\d+)\)?)?$")


@dataclass(frozen=True)
class SequenceKind:
    """chi_general, chi_uniform(3), ind_exact_uniform(3), match_general(2), ..."""
    polynomial: PolynomialKind
    uniform: bool
    exact: bool
    r: Optional[int] = None   # edge size; for match_general the smallest edge size k

    @classmethod
    def parse(cls, text: str) -> "SequenceKind":
        match = _KIND_PATTERN.match(text.strip().lower().replace(" ", ""))
        if not match:
            raise ValidationError(f"unknown sequence kind {text!r}")
        poly, exact, scope, r = match.groups()
        r = int(r) if r is not None else None
        if scope == "uniform" and r is None:
            raise ValidationError(f"{text!r} needs an edge size, e.g. {poly}_uniform(3)")
        if scope == "general" and r is not None and poly != "match":
            raise ValidationError(f"{text!r}: only the matching sequence takes k in general form")
        if r is not None and r < 1:
            raise ValidationError(f"edge size must be >= 1, got {r}")
        return cls(PolynomialKind(poly), scope == "uniform", bool(exact), r)

    @property
    def matching_k(self) -> int:
        return self.r if self.r is not None else 2

    @property
    def label(self) -> str:
        name = self.polynomial.value + ("_exact" if self.exact else "")
        if self.uniform:
            return f"{name}_uniform({self.r})"
        if self.polynomial == PolynomialKind.MATCH and self.r is not None:
            return f"{name}_general({self.r})"
        return f"{name}_general"


def _denominator(n: int, kind: SequenceKind):
    if kind.uniform:
        return mp.mpf(math.comb(n, kind.r))
    return mp.mpf(2) ** n


def closed_form_numerator(n: int, kind: SequenceKind):
    """Numerator in log2 units"""
    n_f = mp.mpf(n)
    if kind.polynomial == PolynomialKind.CHI:
        return (n_f ** 2 + n_f) * mp.log(n_f, 2) + n_f ** 2 * mp.log(mp.e, 2)
    m = n_f if kind.polynomial == PolynomialKind.IND else mp.mpf(n // kind.matching_k)
    natural = m * (m + 1) / 2 * mp.log(n_f * mp.e) + n_f * mp.log(n_f)
    return natural / mp.log(2)


def exact_numerator(n: int, kind: SequenceKind):
    """log2(product bound * n!), in log2 units"""
    k = kind.matching_k if kind.polynomial == PolynomialKind.MATCH else None
    bound = product_bound(kind.polynomial, n, k)
    return log2_int(bound) + log2_int(math.factorial(n))


def ratio_value(n: int, kind: SequenceKind):
    """One term of the sequence as an mpf, or None where the denominator vanishes"""
    with mp.workprec(PRECISION_BITS):
        denominator = _denominator(n, kind)
        if denominator == 0:
            return None
        numerator = exact_numerator(n, kind) if kind.exact else closed_form_numerator(n, kind)
        return numerator / denominator


def ratio_sequence(kind, n_range: Iterable[int]) -> BoundTable:
    """
    Evaluate a ratio sequence over n_range; n values with C(n,r) = 0 are skipped.

    Args:
        kind: SequenceKind or its text form
        n_range: Vertex counts (each 1 <= n <= limits.ratio_max_n)
    """
    kind = SequenceKind.parse(kind) if isinstance(kind, str) else kind
    max_n = get_settings().limits.ratio_max_n
    table = BoundTable()
    for n in n_range:
        if n < 1:
            raise ValidationError(f"ratio sequences start at n = 1, got {n}")
        if n > max_n:
            logger.error(f"Ratio sequence refused at n={n} (limit {max_n})")
            raise BudgetExceededError("ratio_max_n", n, max_n)
        value = ratio_value(n, kind)
        if value is not None:
            table.add(n, kind.label, 'float', value)
    logger.debug(f"Ratio sequence {kind.label}: {len(table)} rows")
    return table
