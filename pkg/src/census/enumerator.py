"""
Isomorphism-class enumeration by orbit sweeping.

A labeled hypergraph of a census mode is a code: a bit mask over the mode's
edge universe (bit i set means universe[i] is an edge). Each edge-count stratum
is swept in ascending code order; the first code met of every orbit is its
minimum and becomes the class representative, and the rest of the orbit is
parked until the sweep passes it. Orbits are computed for all n! vertex
permutations at once from a precomputed (n!, |universe|) image-index table.
"""
import logging
import math
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from functools import lru_cache
from itertools import permutations
from typing import Iterable, Iterator, List, Optional, Sequence, Tuple

import numpy as np

from ..core.hypergraph import MAX_VERTICES, Hypergraph
from ..core.modes import CensusMode, ModeKind
from ..utils.bits import iter_fixed_weight, set_bits
from ..utils.config import Settings, get_settings, set_settings
from ..utils.errors import FeasibilityGuardError, ValidationError

logger = logging.getLogger(__name__)

# codes live in uint64
CODE_BITS = 63


@dataclass(frozen=True)
class EnumerationPlan:
    """What a census or witness scan will sweep: the edge universe and the strata"""
    n: int
    mode: CensusMode
    universe: Tuple[int, ...]
    strata: Tuple[int, ...]
    filtered: bool

    @property
    def universe_size(self) -> int:
        return len(self.universe)

    @property
    def labeled(self) -> int:
        """Number of labeled codes in the selected strata"""
        return sum(math.comb(self.universe_size, m) for m in self.strata)


def plan_enumeration(n: int, mode: CensusMode, edge_counts: Optional[Iterable[int]] = None,
                     settings: Optional[Settings] = None) -> EnumerationPlan:
    """
    Check the feasibility guards and fix the strata to sweep.

    Without edge_counts every stratum is swept, which needs the universe to fit
    census.full_universe_bits. With edge_counts only those strata are swept,
    within census.max_stratum_labeled codes.
    """
    settings = settings or get_settings()
    guards = settings.census
    if not isinstance(n, int) or n < 1 or n > MAX_VERTICES:
        raise ValidationError(f"vertex count must be in 1..{MAX_VERTICES}, got {n!r}")

    if n > guards.max_permutation_n:
        logger.error(f"Enumeration refused: n={n} above max_permutation_n={guards.max_permutation_n}")
        raise FeasibilityGuardError(
            "max_permutation_n", f"n={n} exceeds {guards.max_permutation_n} for mode {mode.label}")
    universe = tuple(mode.eligible_masks(n))
    size = len(universe)

    if edge_counts is None:
        if size > guards.full_universe_bits:
            logger.error(f"Full enumeration refused: {size} eligible edges for n={n}, mode {mode.label}")
            raise FeasibilityGuardError(
                "full_universe_bits",
                f"full enumeration of mode {mode.label} at n={n} needs 2^{size} labeled codes "
                f"(limit 2^{guards.full_universe_bits}); pass an edge-count stratum")
        return EnumerationPlan(n, mode, universe, tuple(range(size + 1)), filtered=False)

    strata = tuple(sorted(set(int(m) for m in edge_counts)))
    for m in strata:
        if m < 0 or m > size:
            raise ValidationError(f"edge count {m} outside 0..{size} for mode {mode.label} at n={n}")
    max_universe = min(guards.max_universe, CODE_BITS)
    if size > max_universe:
        logger.error(f"Stratum enumeration refused: universe {size} > {max_universe}")
        raise FeasibilityGuardError("max_universe", f"{size} eligible edges exceed {max_universe}")
    plan = EnumerationPlan(n, mode, universe, strata, filtered=True)
    if plan.labeled > guards.max_stratum_labeled:
        logger.error(f"Stratum enumeration refused: {plan.labeled:,} labeled codes")
        raise FeasibilityGuardError(
            "max_stratum_labeled",
            f"strata {list(strata)} hold {plan.labeled:,} labeled codes (limit {guards.max_stratum_labeled:,})")
    return plan


@lru_cache(maxsize=16)
def image_table(n: int, universe: Tuple[int, ...]) -> np.ndarray:
    """table[p, i] = index of the image of universe[i] under the p-th permutation of range(n)"""
    masks = np.array(universe, dtype=np.int64)
    perms = np.array(list(permutations(range(n))), dtype=np.int64)
    images = np.zeros((len(perms), len(masks)), dtype=np.int64)
    for b in range(n):
        images |= ((masks >> b) & 1)[None, :] << perms[:, b][:, None]
    order = np.argsort(masks)
    positions = np.searchsorted(masks[order], images)
    return order[positions].astype(np.uint8)


def orbit_codes(table: np.ndarray, code: int) -> np.ndarray:
    """Sorted distinct codes in the orbit of `code` (uint64)"""
    bits = set_bits(code)
    if not bits:
        return np.zeros(1, dtype=np.uint64)
    shifted = np.left_shift(np.uint64(1), table[:, bits].astype(np.uint64))
    return np.unique(np.bitwise_or.reduce(shifted, axis=1))


def canonical_code(table: np.ndarray, code: int) -> int:
    """Smallest code in the orbit: the representative the sweep keeps"""
    return int(orbit_codes(table, code)[0])


def sperner_conflicts(universe: Sequence[int]) -> List[int]:
    """Code masks of universe pairs where one edge strictly contains the other"""
    pairs = []
    for i, a in enumerate(universe):
        for j, b in enumerate(universe):
            if i != j and a & b == a:
                pairs.append((1 << i) | (1 << j))
    return pairs


def encode(h: Hypergraph, universe: Sequence[int]) -> int:
    """Code of h over the universe; every edge must belong to it"""
    index = {mask: i for i, mask in enumerate(universe)}
    code = 0
    for e in h.edges:
        if e not in index:
            raise ValidationError(f"edge {e:b} not in the edge universe")
        code |= 1 << index[e]
    return code


def decode(n: int, universe: Sequence[int], code: int) -> Hypergraph:
    return Hypergraph.from_masks(n, (universe[i] for i in set_bits(code)))


def stratum_representatives(n: int, mode: CensusMode, universe: Tuple[int, ...], m: int) -> List[int]:
    """Orbit-minimum codes with m edges, ascending"""
    table = image_table(n, universe)
    conflicts = sperner_conflicts(universe) if mode.kind == ModeKind.SPERNER else ()
    parked = set()
    representatives = []
    for code in iter_fixed_weight(len(universe), m):
        if code in parked:
            parked.discard(code)
            continue
        # relabeling preserves the antichain property, so whole orbits are skipped
        if conflicts and any(code & pair == pair for pair in conflicts):
            continue
        representatives.append(code)
        parked.update(int(c) for c in orbit_codes(table, code) if c > code)
    if parked:
        logger.error(f"{len(parked)} orbit codes never reached in stratum {m}")
    return representatives


def _stratum_job(args) -> Tuple[int, List[int]]:
    settings, n, mode, universe, m = args
    set_settings(settings)
    return m, stratum_representatives(n, mode, universe, m)


def sweep_strata(plan: EnumerationPlan, jobs: int = 1) -> Iterator[Tuple[int, List[int]]]:
    """(stratum, representative codes) in ascending stratum order"""
    if jobs <= 1 or len(plan.strata) <= 1:
        for m in plan.strata:
            yield m, stratum_representatives(plan.n, plan.mode, plan.universe, m)
        return
    settings = get_settings()
    tasks = [(settings, plan.n, plan.mode, plan.universe, m) for m in plan.strata]
    with ProcessPoolExecutor(max_workers=jobs) as executor:
        yield from executor.map(_stratum_job, tasks)


def enumerate_nonisomorphic(n: int, mode: CensusMode, edge_counts: Optional[Iterable[int]] = None,
                            jobs: int = 1) -> Iterator[Hypergraph]:
    """
    One representative per isomorphism class, ordered by edge count then code.

    Args:
        n: Vertex count
        mode: Census mode
        edge_counts: Restrict to these strata (needed beyond the full-enumeration guard)
        jobs: Worker processes; the output does not depend on it
    """
    plan = plan_enumeration(n, mode, edge_counts)
    logger.debug(f"Enumerating mode {mode.label} at n={n}: {plan.labeled:,} labeled codes")
    for _, codes in sweep_strata(plan, jobs):
        for code in codes:
            yield decode(n, plan.universe, code)
