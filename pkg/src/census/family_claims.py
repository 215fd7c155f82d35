"""
Desk-scale checks of the chromatic uniqueness claims for hypercycles,
sunflowers and the cycle-plus-path B construction.

r-uniform claims are checked in the edge-count stratum of uniform(r) (chi fixes
|E| there). Unrestricted claims are checked over all Sperner families on n
vertices: among all hypergraphs, any edge with a proper superset outside E gives
a chi-mate through superset_extension, so no hypergraph with such an edge can
be chi-unique in mode all. Outcomes never extend beyond the scanned stratum.
"""
import logging
from dataclasses import asdict, dataclass
from enum import Enum
from typing import List, Optional, Tuple

from .witness import Stratum, witness_search
from ..core.families import FamilyKind, FamilySpec, b_construction_order, generate_family
from ..core.hypergraph import Hypergraph, superset_extension
from ..core.modes import CensusMode
from ..polynomials.graph_polynomial import PolynomialKind
from ..polynomials.invariants import polynomial_of
from ..isomorphism.canonical import are_isomorphic
from ..utils.errors import BudgetExceededError, FeasibilityGuardError, ValidationError

logger = logging.getLogger(__name__)


class Verdict(str, Enum):
    CONFIRMS = "CONFIRMS"
    REFUTES = "REFUTES"
    OUT_OF_SCALE = "OUT_OF_SCALE"


@dataclass
class ClaimOutcome:
    family: str
    n: int
    claim: str
    expected_unique: bool
    stratum: str
    verdict: Verdict
    mates_found: Optional[int] = None
    note: str = ""

    def to_dict(self) -> dict:
        data = asdict(self)
        data['verdict'] = self.verdict.value
        return data


@dataclass
class FamilyClaimsReport:
    r: int
    n_max: int
    outcomes: List[ClaimOutcome]

    def count(self, verdict: Verdict) -> int:
        return sum(1 for o in self.outcomes if o.verdict == verdict)

    def to_dict(self) -> dict:
        return {
            'r': self.r,
            'n_max': self.n_max,
            'outcomes': [o.to_dict() for o in self.outcomes],
            'summary': {v.value: self.count(v) for v in Verdict},
        }


def _search(family: str, h: Hypergraph, claim: str, expected_unique: bool,
            mode: CensusMode, stratum: Stratum, jobs: int) -> ClaimOutcome:
    described = f"{mode.label}/n={h.n}" + (f"/{h.num_edges} edges" if stratum == Stratum.EDGE_COUNT else "")
    try:
        result = witness_search(h, PolynomialKind.CHI, stratum, mode=mode, jobs=jobs)
    except (FeasibilityGuardError, BudgetExceededError) as e:
        logger.info(f"{family}: {claim} out of scale ({e})")
        return ClaimOutcome(family, h.n, claim, expected_unique, described, Verdict.OUT_OF_SCALE, note=str(e))
    found = len(result.mates)
    verdict = Verdict.CONFIRMS if (found > 0) == (not expected_unique) else Verdict.REFUTES
    if verdict == Verdict.REFUTES:
        logger.warning(f"{family}: {claim} refuted within {described} ({found} mates)")
    return ClaimOutcome(family, h.n, claim, expected_unique, described, verdict, mates_found=found)


def _superset_mate(family: str, h: Hypergraph) -> ClaimOutcome:
    """'not chi-unique' among all hypergraphs, certified by the superset extension"""
    claim = "not chi-unique (general)"
    mate = superset_extension(h)
    if mate is None:
        return ClaimOutcome(family, h.n, claim, False, "all", Verdict.REFUTES, mates_found=0,
                            note="no edge has a proper superset outside E")
    same = polynomial_of(mate, PolynomialKind.CHI) == polynomial_of(h, PolynomialKind.CHI)
    distinct = not are_isomorphic(mate, h)
    verdict = Verdict.CONFIRMS if same and distinct else Verdict.REFUTES
    return ClaimOutcome(family, h.n, claim, False, "all (superset extension)", verdict,
                        mates_found=1 if same and distinct else 0,
                        note=f"mate {mate}")


def sunflower_claim(r: int, p: int, k: int) -> Tuple[str, bool]:
    """(claim label, expected uniqueness) of SH(n,p,r) with k petals among r-uniform hypergraphs"""
    if p <= r - 2 or k <= 2:
        return "r-chi-unique", True
    return "not r-chi-unique", False


def verify_family_claims(r: int, n_max: int, jobs: int = 1) -> FamilyClaimsReport:
    """
    Run every family instance with at most n_max vertices against its claim.

    Args:
        r: Edge size (r >= 3)
        n_max: Largest vertex count to instantiate
        jobs: Worker processes for mode-wide scans
    """
    if r < 3:
        raise ValidationError(f"family claims concern r >= 3, got r={r}")
    outcomes: List[ClaimOutcome] = []
    uniform = CensusMode.uniform(r)

    # hypercycles: r-chi-unique, but not chi-unique
    m = 3
    while m * (r - 1) <= n_max:
        spec = FamilySpec(FamilyKind.HYPERCYCLE, m=m, r=r).resolved()
        h = generate_family(spec)
        outcomes.append(_search(spec.label, h, "r-chi-unique", True, uniform, Stratum.EDGE_COUNT, jobs))
        outcomes.append(_superset_mate(spec.label, h))
        m += 1

    # sunflowers: r-chi-unique for p <= r-2; for p = r-1 only with k <= 2 petals
    for p in range(1, r):
        k = 1
        while r + (k - 1) * p <= n_max:
            spec = FamilySpec(FamilyKind.SUNFLOWER, r=r, p=p, k=k).resolved()
            h = generate_family(spec)
            claim, expected = sunflower_claim(r, p, k)
            outcomes.append(_search(spec.label, h, claim, expected, uniform, Stratum.EDGE_COUNT, jobs))
            if p == 1:
                outcomes.append(_search(spec.label, h, "chi-unique (Sperner families)", True,
                                        CensusMode.sperner(), Stratum.MODE, jobs))
            k += 1

    # B construction: generated and reported, uniqueness beyond desk scale
    p = 3
    order = b_construction_order(p, r)
    spec = FamilySpec(FamilyKind.B_CONSTRUCTION, p=p, r=r).resolved()
    h = generate_family(spec)
    outcomes.append(ClaimOutcome(spec.label, h.n, "chi-unique", True, "sperner", Verdict.OUT_OF_SCALE,
                                 note=f"order {order} with {h.num_edges} edges is beyond exhaustive search"))

    report = FamilyClaimsReport(r, n_max, outcomes)
    logger.info(f"Family claims r={r}, n<={n_max}: "
                + ", ".join(f"{v.value}={report.count(v)}" for v in Verdict))
    return report
