"""
Brute-force oracles for differential testing of the polynomial engines.
They enumerate the definitions directly and are deliberately independent of
the dynamic programs in invariants.py.
"""
import logging
from itertools import combinations
from typing import List, Optional

import numpy as np

from ..core.hypergraph import Hypergraph
from ..utils.bits import mask_to_vertices
from ..utils.config import get_settings
from ..utils.errors import ValidationError
from ..utils.work_budget import WorkBudget

logger = logging.getLogger(__name__)

CHUNK = 1 << 18


def count_proper_colorings(h: Hypergraph, k: int, budget: Optional[int] = None) -> int:
    """
    Number of maps V(H) -> [k] under which every edge has two differently colored vertices.

    Args:
        h: Hypergraph
        k: Number of available colors (k >= 0)
        budget: Maximum k^n assignments to enumerate (defaults to limits.coloring_budget)
    """
    if k < 0:
        raise ValidationError(f"color count must be >= 0, got {k}")
    budget = get_settings().limits.coloring_budget if budget is None else budget
    total = k ** h.n
    WorkBudget("coloring_budget", budget).require(total)
    if total == 0:
        return 0

    powers = np.array([k ** v for v in range(h.n)], dtype=np.int64)
    edge_vertices = [np.array(mask_to_vertices(e)) - 1 for e in h.edges]
    proper_count = 0
    for start in range(0, total, CHUNK):
        codes = np.arange(start, min(total, start + CHUNK), dtype=np.int64)
        colors = (codes[:, None] // powers[None, :]) % k
        proper = np.ones(len(codes), dtype=bool)
        for vs in edge_vertices:
            block = colors[:, vs]
            proper &= ~(block == block[:, :1]).all(axis=1)
        proper_count += int(proper.sum())
    return proper_count


def brute_force_independence_counts(h: Hypergraph) -> List[int]:
    """ind_0..ind_n by testing every vertex subset as a Python set"""
    edges = [set(e) for e in h.edge_sets()]
    counts = [0] * (h.n + 1)
    for size in range(h.n + 1):
        for subset in combinations(range(1, h.n + 1), size):
            s = set(subset)
            if not any(e <= s for e in edges):
                counts[size] += 1
    return counts


def brute_force_matching_counts(h: Hypergraph) -> List[int]:
    """mu_0..mu_k by testing every set of edges for pairwise disjointness"""
    edges = [set(e) for e in h.edge_sets()]
    counts = [1]
    for size in range(1, len(edges) + 1):
        found = 0
        for chosen in combinations(edges, size):
            union = set().union(*chosen)
            if len(union) == sum(len(e) for e in chosen):
                found += 1
        if found == 0:
            break
        counts.append(found)
    return counts
