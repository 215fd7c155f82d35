"""
Exact orbit counting of hypergraph classes with Burnside's lemma.

For each cycle type of S_n one representative permutation is built; its
induced action on the eligible vertex subsets is walked to count cycles c,
and the type contributes (number of permutations of that type) * 2^c.
"""
import logging
import math
from collections import Counter
from enum import Enum
from itertools import combinations
from typing import Iterator, List, Optional, Tuple

import numpy as np

from ..core.modes import CensusMode, ModeKind
from ..utils.config import get_settings
from ..utils.errors import BudgetExceededError, HypergraphToolkitError, ValidationError

logger = logging.getLogger(__name__)


class SubsetModel(str, Enum):
    """Which vertex subsets may appear as edges in the general count"""
    MODEL = "model"          # size >= 2
    NONEMPTY = "nonempty"    # size >= 1
    ALL = "all"              # every subset, the empty one included


_MIN_SIZE = {SubsetModel.MODEL: 2, SubsetModel.NONEMPTY: 1, SubsetModel.ALL: 0}


def integer_partitions(n: int, largest: Optional[int] = None) -> Iterator[Tuple[int, ...]]:
    """Partitions of n as non-increasing tuples"""
    largest = n if largest is None else largest
    if n == 0:
        yield ()
        return
    for part in range(min(n, largest), 0, -1):
        for rest in integer_partitions(n - part, part):
            yield (part,) + rest


def permutations_of_type(cycle_type: Tuple[int, ...]) -> int:
    """n! / prod_j (j^{m_j} m_j!) for a cycle type with m_j cycles of length j"""
    n = sum(cycle_type)
    denominator = 1
    for length, multiplicity in Counter(cycle_type).items():
        denominator *= length ** multiplicity * math.factorial(multiplicity)
    return math.factorial(n) // denominator


def representative(cycle_type: Tuple[int, ...]) -> np.ndarray:
    """0-based permutation whose cycles occupy consecutive points"""
    perm = np.empty(sum(cycle_type), dtype=np.int64)
    start = 0
    for length in cycle_type:
        points = np.arange(start, start + length)
        perm[points] = np.roll(points, -1)
        start += length
    return perm


def _subset_masks(n: int, sizes: List[int]) -> np.ndarray:
    masks = [sum(1 << b for b in combo) for size in sizes for combo in combinations(range(n), size)]
    return np.array(sorted(masks), dtype=np.int64)


def induced_cycle_count(perm: np.ndarray, masks: np.ndarray) -> int:
    """Number of cycles of the permutation induced on the given (sorted) subset masks"""
    if len(masks) == 0:
        return 0
    images = np.zeros_like(masks)
    for b, target in enumerate(perm):
        images |= ((masks >> b) & 1) << int(target)
    successor = np.searchsorted(masks, images)
    seen = np.zeros(len(masks), dtype=bool)
    cycles = 0
    for start in range(len(masks)):
        if seen[start]:
            continue
        cycles += 1
        i = start
        while not seen[i]:
            seen[i] = True
            i = successor[i]
    return cycles


def _burnside(n: int, sizes: List[int]) -> int:
    masks = _subset_masks(n, sizes)
    total = 0
    for cycle_type in integer_partitions(n):
        cycles = induced_cycle_count(representative(cycle_type), masks)
        total += permutations_of_type(cycle_type) * 2 ** cycles
    count, remainder = divmod(total, math.factorial(n))
    if remainder:
        raise HypergraphToolkitError(f"Burnside sum {total} not divisible by {n}!")
    return count


def count_nonisomorphic_runiform(n: int, r: int, max_n: Optional[int] = None) -> int:
    """
    H^r(n), the number of r-uniform hypergraphs on n vertices up to isomorphism.

    Args:
        n: Vertex count (n >= 1)
        r: Edge size (r >= 1)
        max_n: Size limit (defaults to limits.runiform_count_max_n)
    """
    max_n = get_settings().limits.runiform_count_max_n if max_n is None else max_n
    if n < 1 or r < 1:
        raise ValidationError(f"need n >= 1 and r >= 1, got n={n}, r={r}")
    if n > max_n:
        logger.error(f"r-uniform Burnside count refused for n={n} (limit {max_n})")
        raise BudgetExceededError("runiform_count_max_n", n, max_n)
    sizes = [r] if r <= n else []
    count = _burnside(n, sizes)
    logger.debug(f"H^{r}({n}) = {count}")
    return count


def count_nonisomorphic_general(n: int, model: SubsetModel = SubsetModel.MODEL,
                                max_n: Optional[int] = None) -> int:
    """
    H(n), the number of hypergraphs on n vertices up to isomorphism.

    The default model allows edges of size >= 2; `nonempty` adds singletons
    and `all` also admits the empty edge (the family count behind 2^{2^n}).
    """
    model = SubsetModel(model)
    max_n = get_settings().limits.general_count_max_n if max_n is None else max_n
    if n < 1:
        raise ValidationError(f"need n >= 1, got {n}")
    if n > max_n:
        logger.error(f"General Burnside count refused for n={n} (limit {max_n})")
        raise BudgetExceededError("general_count_max_n", n, max_n)
    return _burnside(n, list(range(_MIN_SIZE[model], n + 1)))


def count_nonisomorphic(n: int, mode: CensusMode) -> int:
    """Burnside count matching a census mode; Sperner families have no closed form here"""
    if mode.kind == ModeKind.UNIFORM:
        return count_nonisomorphic_runiform(n, mode.r)
    if mode.kind == ModeKind.ALL:
        return count_nonisomorphic_general(n, SubsetModel.MODEL)
    raise ValidationError("no Burnside count for sperner mode")


def count_labeled(n: int, r: Optional[int] = None, model: SubsetModel = SubsetModel.MODEL) -> int:
    """
    Labeled hypergraph count: 2^{C(n,r)} when r is given, otherwise
    2^{number of subsets admitted by the model}.
    """
    if r is not None:
        return 2 ** math.comb(n, r)
    model = SubsetModel(model)
    eligible = sum(math.comb(n, size) for size in range(_MIN_SIZE[model], n + 1))
    return 2 ** eligible
