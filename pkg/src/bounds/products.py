"""
Exact product bounds on the number of distinct polynomials, and labeled counts.

    chi:   B_chi(n)  <= prod_{i=1..n} S(n,i)
    ind:   B_Ind(n)  <= prod_{i=1..n} C(n,i)
    match: prod_{i=1..floor(n/k)} C(floor(n/k), i)

The matching product is not a valid upper bound on B_M(n): it assumes
mu_i <= C(floor(n/k), i), which already fails for mu_1 = |E| (K_4 has six edges
against C(2,1) = 2). The exact census exceeds it from n = 3 in mode all. It is
kept as the numerator of the matching ratio sequences.

Every factor in these ranges is positive.
"""
import logging
import math
from dataclasses import dataclass
from typing import Optional, Union

from mpmath import mp

from ..isomorphism.burnside import SubsetModel
from ..polynomials.graph_polynomial import PolynomialKind
from ..polynomials.stirling import stirling_row
from ..utils.config import get_settings
from ..utils.errors import BudgetExceededError, ValidationError

logger = logging.getLogger(__name__)

EXACT_EXPONENT_MAX = 10 ** 6


def product_bound(kind: Union[PolynomialKind, str], n: int, r_or_k: Optional[int] = None) -> int:
    """
    Exact product bound (the matching product is not a true bound; see the module notes).

    Args:
        kind: chi, ind or match
        n: Vertex count (n >= 1)
        r_or_k: Smallest edge size k for the matching product (default 2); unused otherwise
    """
    kind = PolynomialKind(kind)
    if n < 1:
        raise ValidationError(f"product bound needs n >= 1, got {n}")
    limits = get_settings().limits

    if kind == PolynomialKind.CHI:
        if n > limits.chi_product_max_n:
            logger.error(f"Stirling product refused for n={n}")
            raise BudgetExceededError("chi_product_max_n", n, limits.chi_product_max_n)
        return math.prod(stirling_row(n).values[1:])

    if n > limits.binomial_product_max_n:
        logger.error(f"Binomial product refused for n={n}")
        raise BudgetExceededError("binomial_product_max_n", n, limits.binomial_product_max_n)
    if kind == PolynomialKind.IND:
        return math.prod(math.comb(n, i) for i in range(1, n + 1))
    k = 2 if r_or_k is None else r_or_k
    if k < 1:
        raise ValidationError(f"matching bound needs k >= 1, got {k}")
    m = n // k
    return math.prod(math.comb(m, i) for i in range(1, m + 1))


def log2_int(value: int):
    """log2 of a positive integer at the current mpmath precision"""
    return mp.log(mp.mpf(value), 2)


@dataclass(frozen=True)
class LabeledCount:
    """2^exponent labeled hypergraphs; `exact` only when the exponent is at most 10^6"""
    n: int
    r: Optional[int]
    model: Optional[SubsetModel]
    log2: int
    exact: Optional[int]


def labeled_count(n: int, r: Optional[int] = None, model: Union[SubsetModel, str] = SubsetModel.ALL) -> LabeledCount:
    """
    Number of labeled hypergraphs on n vertices.

    With r: 2^{C(n,r)}. Without r the exponent counts admissible edges under the
    subset model: 2^n for all subsets, 2^n - 1 nonempty, 2^n - n - 1 for size >= 2.
    """
    if n < 0:
        raise ValidationError(f"labeled count needs n >= 0, got {n}")
    if r is not None:
        exponent = math.comb(n, r)
        model = None
    else:
        model = SubsetModel(model)
        exponent = {
            SubsetModel.ALL: 2 ** n,
            SubsetModel.NONEMPTY: 2 ** n - 1,
            SubsetModel.MODEL: 2 ** n - n - 1,
        }[model]
    exact = 2 ** exponent if exponent <= EXACT_EXPONENT_MAX else None
    return LabeledCount(n, r, model, exponent, exact)
