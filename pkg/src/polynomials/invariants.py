"""
Chromatic, independence and matching polynomials of hypergraphs.

chi(H;X) = sum_i b_i(H) X_(i), where b_i counts partitions of V(H) into i
independent blocks; Ind(H;X) = sum_i ind_i(H) X^i including ind_0 = 1;
M(H;X) = sum_{k>=1} mu_k(H) X^k counts k-sets of pairwise disjoint edges.
"""
import logging
from dataclasses import dataclass
from typing import List, Optional, Tuple

import numpy as np

from .graph_polynomial import GraphPolynomial, PolynomialKind, to_monomial
from ..core.hypergraph import Hypergraph
from ..utils.bits import popcount_array, submask_array
from ..utils.config import get_settings
from ..utils.errors import BudgetExceededError, ValidationError
from ..utils.work_budget import WorkBudget

logger = logging.getLogger(__name__)

# Bell(25) < 2^63, so int64 partition counts stay exact up to here
DP_HARD_MAX_N = 25
CHUNK_BITS = 20


@dataclass(frozen=True)
class PartitionVector:
    """counts[i-1] = b_i(H), the number of partitions of V(H) into i independent sets"""
    n: int
    counts: Tuple[int, ...]

    def as_list(self) -> List[int]:
        return list(self.counts)

    def to_polynomial(self) -> GraphPolynomial:
        return GraphPolynomial.falling((0,) + self.counts)


def independence_indicator(h: Hypergraph, start: int, stop: int) -> np.ndarray:
    """Boolean array: entry j tells whether vertex mask start+j contains no edge"""
    masks = np.arange(start, stop, dtype=np.int64)
    indep = np.ones(masks.shape, dtype=bool)
    for e in h.edges:
        e = np.int64(e)
        indep &= (masks & e) != e
    return indep


def chromatic_partition_vector(h: Hypergraph, limit: Optional[int] = None) -> PartitionVector:
    """
    Count partitions into independent blocks by subset dynamic programming.

    The block holding the smallest remaining vertex is chosen first, so every
    partition is produced once. Only the full vertex set and sets avoiding
    vertex 1 are ever reached, which halves the table.

    Args:
        h: Hypergraph
        limit: Maximum vertex count (defaults to limits.dp_max_n)
    """
    limit = get_settings().limits.dp_max_n if limit is None else limit
    if h.n > min(limit, DP_HARD_MAX_N):
        logger.error(f"Chromatic DP refused for n={h.n} (limit {min(limit, DP_HARD_MAX_N)})")
        raise BudgetExceededError("dp_max_n", h.n, min(limit, DP_HARD_MAX_N))

    n = h.n
    full = (1 << n) - 1
    indep = independence_indicator(h, 0, 1 << n)
    # table[s >> 1][i] = partitions of the even mask s into i independent blocks
    table = np.zeros((1 << (n - 1), n + 1), dtype=np.int64)
    table[0, 0] = 1

    def blocks_of(s: int) -> np.ndarray:
        low = s & -s
        rest = s ^ low
        subs = submask_array(rest)
        ok = indep[subs | low]
        counts = np.zeros(n + 1, dtype=np.int64)
        if ok.any():
            remaining = (rest ^ subs[ok]) >> 1
            counts[1:] = table[remaining, :-1].sum(axis=0)
        return counts

    for s in range(2, full + 1, 2):
        table[s >> 1] = blocks_of(s)
    final = blocks_of(full)
    return PartitionVector(n, tuple(int(c) for c in final[1:]))


def chromatic_poly(h: Hypergraph, limit: Optional[int] = None) -> GraphPolynomial:
    """chi(H;X) in the falling-factorial basis"""
    return chromatic_partition_vector(h, limit).to_polynomial()


def independence_counts(h: Hypergraph, limit: Optional[int] = None) -> List[int]:
    """ind_0..ind_n by chunked enumeration of all vertex subsets"""
    limit = get_settings().limits.independence_max_n if limit is None else limit
    if h.n > limit:
        logger.error(f"Independence enumeration refused for n={h.n} (limit {limit})")
        raise BudgetExceededError("independence_max_n", h.n, limit)

    total = 1 << h.n
    counts = np.zeros(h.n + 1, dtype=np.int64)
    step = 1 << CHUNK_BITS
    for start in range(0, total, step):
        stop = min(total, start + step)
        indep = independence_indicator(h, start, stop)
        sizes = popcount_array(np.arange(start, stop, dtype=np.int64)[indep])
        counts += np.bincount(sizes, minlength=h.n + 1)
    return [int(c) for c in counts]


def independence_poly(h: Hypergraph, limit: Optional[int] = None) -> GraphPolynomial:
    return GraphPolynomial.monomial(independence_counts(h, limit))


def matching_counts(h: Hypergraph, max_nodes: Optional[int] = None) -> List[int]:
    """
    mu_0..mu_m by depth-first search over edges in canonical order,
    extending only with edges disjoint from the current matching.
    """
    max_nodes = get_settings().limits.matching_max_nodes if max_nodes is None else max_nodes
    budget = WorkBudget("matching_max_nodes", max_nodes)
    edges = h.edges
    counts = [0] * (len(edges) + 1)
    counts[0] = 1

    def extend(start: int, used: int, size: int):
        for j in range(start, len(edges)):
            e = edges[j]
            if e & used:
                continue
            budget.consume()
            counts[size + 1] += 1
            extend(j + 1, used | e, size + 1)

    extend(0, 0, 0)
    while len(counts) > 1 and counts[-1] == 0:
        counts.pop()
    return counts


def matching_poly(h: Hypergraph, max_nodes: Optional[int] = None) -> GraphPolynomial:
    """M(H;X) with the sum starting at k = 1; the zero polynomial without edges"""
    counts = matching_counts(h, max_nodes)
    return GraphPolynomial.monomial([0] + counts[1:])


def polynomial_of(h: Hypergraph, kind: PolynomialKind) -> GraphPolynomial:
    """The requested polynomial in the monomial basis (the census fingerprint)"""
    kind = PolynomialKind(kind)
    if kind == PolynomialKind.CHI:
        return to_monomial(chromatic_poly(h))
    if kind == PolynomialKind.IND:
        return independence_poly(h)
    if kind == PolynomialKind.MATCH:
        return matching_poly(h)
    raise ValidationError(f"unknown polynomial {kind}")
