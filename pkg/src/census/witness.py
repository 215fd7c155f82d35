"""
Witness search: every non-isomorphic hypergraph of a stratum sharing a target's polynomial.

For r-uniform targets the edge-count stratum is exhaustive for the question,
because each of chi, Ind and M fixes |E| within r-uniform hypergraphs on n
vertices (second falling coefficient, ind_r = C(n,r) - |E|, mu_1 = |E|).
"""
import logging
import math
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from enum import Enum
from typing import List, Optional, Tuple, Union

from .enumerator import canonical_code, decode, encode, image_table, plan_enumeration, stratum_representatives
from ..core.hypergraph import Hypergraph
from ..core.modes import CensusMode
from ..isomorphism.canonical import canonical_form
from ..polynomials.graph_polynomial import GraphPolynomial, PolynomialKind
from ..polynomials.invariants import polynomial_of
from ..utils.config import get_settings, set_settings
from ..utils.errors import BudgetExceededError, CensusIntegrityError, ValidationError

logger = logging.getLogger(__name__)


class Stratum(str, Enum):
    EDGE_COUNT = "edge_count"   # same n, same mode, same number of edges
    MODE = "mode"               # same n, every hypergraph of the mode


@dataclass
class WitnessResult:
    """Mates of a target: same polynomial, different isomorphism class"""
    target: Hypergraph
    polynomial: PolynomialKind
    target_polynomial: GraphPolynomial
    mode: CensusMode
    stratum: Stratum
    mates: List[Hypergraph] = field(default_factory=list)
    labeled_candidates: int = 0
    classes_scanned: int = 0

    @property
    def found(self) -> bool:
        return bool(self.mates)

    @property
    def description(self) -> str:
        text = f"{self.mode.label}/n={self.target.n}"
        if self.stratum == Stratum.EDGE_COUNT:
            text += f"/{self.target.num_edges} edges"
        return text

    def to_dict(self) -> dict:
        return {
            'target': [list(e) for e in self.target.edge_sets()],
            'n': self.target.n,
            'P': self.polynomial.value,
            'polynomial': self.target_polynomial.to_dict(),
            'stratum': self.description,
            'labeled_candidates': self.labeled_candidates,
            'classes_scanned': self.classes_scanned,
            'mates': [[list(e) for e in mate.edge_sets()] for mate in self.mates],
        }


def default_mode(h: Hypergraph) -> CensusMode:
    """Smallest census mode containing h: uniform(r), then sperner, then all"""
    sizes = set(h.edge_sizes())
    if len(sizes) == 1:
        return CensusMode.uniform(sizes.pop())
    if h.is_sperner():
        return CensusMode.sperner()
    return CensusMode.all()


def _stratum_mates(n: int, mode: CensusMode, universe: Tuple[int, ...], m: int,
                   kind: PolynomialKind, target: GraphPolynomial, skip: int) -> Tuple[int, List[int]]:
    """(classes scanned, mate codes) within one edge-count stratum"""
    codes = stratum_representatives(n, mode, universe, m)
    mates = [code for code in codes
             if code != skip and polynomial_of(decode(n, universe, code), kind) == target]
    return len(codes), mates


def _stratum_job(args):
    settings = args[0]
    set_settings(settings)
    return args[4], _stratum_mates(*args[1:])


def witness_search(h0: Hypergraph, kind: Union[PolynomialKind, str],
                   stratum: Union[Stratum, str] = Stratum.EDGE_COUNT,
                   mode: Optional[CensusMode] = None, jobs: int = 1,
                   max_labeled: Optional[int] = None) -> WitnessResult:
    """
    Exhaustively scan a stratum for P-mates of h0.

    Args:
        h0: Target hypergraph
        kind: Polynomial: chi, ind or match
        stratum: edge_count (same |E|) or mode (every edge count)
        mode: Hypergraph class to search; inferred from h0 when omitted
        jobs: Worker processes for mode-wide scans
        max_labeled: Labeled candidate budget (defaults to limits.witness_max_labeled)
    """
    settings = get_settings()
    kind = PolynomialKind(kind)
    stratum = Stratum(stratum)
    mode = mode or default_mode(h0)
    max_labeled = settings.limits.witness_max_labeled if max_labeled is None else max_labeled
    if not mode.contains(h0):
        raise ValidationError(f"stratum {mode.label} is inconsistent with the target {h0}")

    edge_counts = [h0.num_edges] if stratum == Stratum.EDGE_COUNT else None
    universe = tuple(mode.eligible_masks(h0.n))
    labeled = math.comb(len(universe), h0.num_edges) if edge_counts else 2 ** len(universe)
    if labeled > max_labeled:
        logger.error(f"Witness search over {labeled:,} labeled candidates refused")
        raise BudgetExceededError("witness_max_labeled", labeled, max_labeled)
    # the witness budget, not the census stratum guard, bounds this scan
    plan = plan_enumeration(h0.n, mode, edge_counts,
                            settings.with_census(max_stratum_labeled=max(labeled, 1)))

    target = polynomial_of(h0, kind)
    skip = canonical_code(image_table(h0.n, plan.universe), encode(h0, plan.universe))
    result = WitnessResult(h0, kind, target, mode, stratum, labeled_candidates=plan.labeled)
    logger.info(f"Witness search for {h0} ({kind.value}) over {result.description}: "
                f"{plan.labeled:,} labeled candidates")

    # one stratum for edge_count, every edge count for mode
    args = [(h0.n, mode, plan.universe, m, kind, target, skip) for m in plan.strata]
    if jobs <= 1 or len(args) == 1:
        outcomes = [(a[3], _stratum_mates(*a)) for a in args]
    else:
        with ProcessPoolExecutor(max_workers=jobs) as executor:
            outcomes = list(executor.map(_stratum_job, [(settings,) + a for a in args]))

    for _, (scanned, codes) in sorted(outcomes, key=lambda item: item[0]):
        result.classes_scanned += scanned
        result.mates.extend(decode(h0.n, plan.universe, code) for code in codes)

    _check_mates(result)
    logger.info(f"Witness search found {len(result.mates)} mates in {result.classes_scanned} classes")
    return result


def _check_mates(result: WitnessResult):
    target_form = canonical_form(result.target)
    for mate in result.mates:
        if polynomial_of(mate, result.polynomial) != result.target_polynomial:
            raise CensusIntegrityError(f"mate {mate} does not share the target polynomial")
        if canonical_form(mate) == target_form:
            raise CensusIntegrityError(f"mate {mate} is isomorphic to the target")
