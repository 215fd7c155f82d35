"""
Census cross-checks that tie the enumeration to structural arguments:
superset-extension mates in mode all, and B^r_P(n) <= B_P(n).
"""
import logging
from dataclasses import dataclass, field
from typing import List, Union

from .enumerator import enumerate_nonisomorphic
from ..core.hypergraph import superset_extension
from ..core.modes import CensusMode
from ..polynomials.graph_polynomial import PolynomialKind
from ..polynomials.invariants import polynomial_of
from ..utils.errors import ValidationError

logger = logging.getLogger(__name__)


@dataclass
class SupersetMateReport:
    n: int
    polynomial: PolynomialKind
    classes: int = 0
    extendable: int = 0
    failures: List[str] = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return not self.failures

    def to_dict(self) -> dict:
        return {'n': self.n, 'P': self.polynomial.value, 'classes': self.classes,
                'extendable': self.extendable, 'failures': self.failures, 'passed': self.passed}


def verify_superset_mates(n: int, kind: Union[PolynomialKind, str], jobs: int = 1) -> SupersetMateReport:
    """
    For every class of mode all on n vertices with an extendable edge, check
    that its superset extension has the same polynomial (so the class is not
    P-unique). Only chi and Ind are invariant under the extension.
    """
    kind = PolynomialKind(kind)
    if kind == PolynomialKind.MATCH:
        raise ValidationError("superset extension changes the matching polynomial; use chi or ind")
    report = SupersetMateReport(n, kind)
    for h in enumerate_nonisomorphic(n, CensusMode.all(), jobs=jobs):
        report.classes += 1
        mate = superset_extension(h)
        if mate is None:
            continue
        report.extendable += 1
        if polynomial_of(mate, kind) != polynomial_of(h, kind):
            report.failures.append(f"{h} -> {mate}")
    if report.failures:
        logger.error(f"Superset mates failed for {len(report.failures)} classes at n={n}")
    logger.info(f"Superset mates n={n} ({kind.value}): {report.extendable}/{report.classes} extendable, "
                f"{len(report.failures)} failures")
    return report


@dataclass
class UniformGeneralReport:
    n: int
    r: int
    polynomial: PolynomialKind
    distinct_uniform: int
    distinct_general: int
    contained: bool

    @property
    def passed(self) -> bool:
        return self.contained and self.distinct_uniform <= self.distinct_general

    def to_dict(self) -> dict:
        return {'n': self.n, 'r': self.r, 'P': self.polynomial.value,
                'B_uniform': self.distinct_uniform, 'B_general': self.distinct_general,
                'contained': self.contained, 'passed': self.passed}


def uniform_vs_general_check(n: int, r: int, kind: Union[PolynomialKind, str],
                             jobs: int = 1) -> UniformGeneralReport:
    """
    The polynomials of r-uniform classes form a subset of those of all
    hypergraphs (edges of size >= 2), hence B^r_P(n) <= B_P(n).
    """
    kind = PolynomialKind(kind)
    if r < 2:
        raise ValidationError(f"mode all admits edges of size >= 2, got r={r}")
    uniform = {polynomial_of(h, kind) for h in enumerate_nonisomorphic(n, CensusMode.uniform(r), jobs=jobs)}
    general = {polynomial_of(h, kind) for h in enumerate_nonisomorphic(n, CensusMode.all(), jobs=jobs)}
    report = UniformGeneralReport(n, r, kind, len(uniform), len(general), uniform <= general)
    if not report.passed:
        logger.error(f"B^{r}_{kind.value}({n}) = {len(uniform)} not within B({n}) = {len(general)}")
    return report
