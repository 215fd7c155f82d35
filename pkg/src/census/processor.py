"""
Census processor: polynomial fingerprints of every isomorphism class of a mode.

Strata (edge counts) are independent shards. Each shard yields one record per
class, (canonical digest, fingerprint digest); a single reducer merges the
records in stratum order and counts H (classes), B (distinct polynomials) and
U (classes whose polynomial no other class has).
"""
import json
import logging
import time
from collections import Counter
from concurrent.futures import ProcessPoolExecutor, as_completed
from dataclasses import dataclass, field
from datetime import datetime
from fractions import Fraction
from pathlib import Path
from typing import Dict, Iterable, List, Optional, Tuple, Union

import numpy as np
import pandas as pd
from tqdm import tqdm

from .checkpoint import RECORD_DTYPE, ShardLedger, fingerprint_digest, make_records
from .enumerator import EnumerationPlan, decode, plan_enumeration, stratum_representatives
from ..core.modes import CensusMode, ModeKind
from ..database.db_manager import DatabaseManager, get_db_manager
from ..isomorphism.canonical import canonical_form
from ..polynomials.graph_polynomial import PolynomialKind
from ..polynomials.invariants import polynomial_of
from ..utils.config import Settings, get_settings, set_settings
from ..utils.errors import CensusIntegrityError, ValidationError

logger = logging.getLogger(__name__)

CSV_COLUMNS = ['n', 'r_or_mode', 'P', 'H', 'B', 'U', 'U_over_H', 'B_over_H', 'seconds']


@dataclass
class CensusReport:
    """Exact census counts for one (n, mode, polynomial)"""
    n: int
    mode: CensusMode
    polynomial: PolynomialKind
    classes: int                       # H
    distinct: int                      # B
    unique: int                        # U
    histogram: Dict[int, int]          # polynomial class size -> number of polynomials
    stratum_classes: Dict[int, int] = field(default_factory=dict)
    edge_counts: Optional[Tuple[int, ...]] = None
    seconds: Optional[float] = None
    generated_at: Optional[str] = None

    @property
    def complete(self) -> bool:
        """Every class is determined by its polynomial"""
        return self.unique == self.classes

    @property
    def unique_fraction(self) -> Fraction:
        return Fraction(self.unique, self.classes)

    @property
    def distinct_fraction(self) -> Fraction:
        return Fraction(self.distinct, self.classes)

    @property
    def r_or_mode(self) -> str:
        return str(self.mode.r) if self.mode.kind == ModeKind.UNIFORM else self.mode.label

    def to_row(self) -> Dict:
        return {
            'n': self.n,
            'r_or_mode': self.r_or_mode,
            'P': self.polynomial.value,
            'H': self.classes,
            'B': self.distinct,
            'U': self.unique,
            'U_over_H': round(float(self.unique_fraction), 12),
            'B_over_H': round(float(self.distinct_fraction), 12),
            'seconds': None if self.seconds is None else round(self.seconds, 3),
        }

    def to_dict(self) -> Dict:
        return {
            'n': self.n,
            'mode': self.mode.label,
            'P': self.polynomial.value,
            'edge_counts': None if self.edge_counts is None else list(self.edge_counts),
            'H': self.classes,
            'B': self.distinct,
            'U': self.unique,
            'U_over_H': str(self.unique_fraction),
            'B_over_H': str(self.distinct_fraction),
            'complete': self.complete,
            'histogram': {str(size): count for size, count in sorted(self.histogram.items())},
            'stratum_classes': {str(m): count for m, count in sorted(self.stratum_classes.items())},
            'seconds': None if self.seconds is None else round(self.seconds, 3),
            'generated_at': self.generated_at,
        }


def run_key(n: int, mode: CensusMode, kind: PolynomialKind, plan: EnumerationPlan) -> str:
    key = f"n{n}_{mode.label}_{kind.value}"
    if plan.filtered:
        key += "_m" + "-".join(str(m) for m in plan.strata)
    return key


def shard_records(n: int, mode: CensusMode, kind: PolynomialKind, universe: Tuple[int, ...],
                  m: int) -> Tuple[np.ndarray, Dict[int, Tuple[int, ...]]]:
    """
    Records of one stratum plus the fingerprint table behind them.

    Returns:
        (records, {fingerprint digest: monomial coefficients})
    """
    pairs = []
    polynomials: Dict[int, Tuple[int, ...]] = {}
    for code in stratum_representatives(n, mode, universe, m):
        h = decode(n, universe, code)
        p = polynomial_of(h, kind)
        digest = fingerprint_digest(p)
        _remember(polynomials, digest, p.coeffs)
        pairs.append((canonical_form(h).digest64, digest))
    return make_records(pairs), polynomials


def _remember(polynomials: Dict[int, Tuple[int, ...]], digest: int, coeffs: Tuple[int, ...]):
    known = polynomials.setdefault(digest, coeffs)
    if known != coeffs:
        logger.error(f"Fingerprint collision on digest {digest:016x}")
        raise CensusIntegrityError(f"two polynomials share the fingerprint digest {digest:016x}")


def _shard_job(args):
    settings, n, mode, kind, universe, m = args
    set_settings(settings)
    records, polynomials = shard_records(n, mode, kind, universe, m)
    return m, records, polynomials


def reduce_records(records: Iterable[np.ndarray]) -> Tuple[int, int, int, Dict[int, int]]:
    """(H, B, U, histogram) from class records; canonical digests must be distinct"""
    merged = np.concatenate([np.asarray(r, dtype=RECORD_DTYPE) for r in records] or
                            [np.zeros(0, dtype=RECORD_DTYPE)])
    classes = len(merged)
    if len(np.unique(merged['canonical'])) != classes:
        logger.error("Two census classes share a canonical digest")
        raise CensusIntegrityError("duplicate canonical digest among census classes")
    _, sizes = np.unique(merged['fingerprint'], return_counts=True)
    distinct = len(sizes)
    unique = int((sizes == 1).sum())
    histogram = {int(size): int(count) for size, count in sorted(Counter(sizes.tolist()).items())}
    return classes, distinct, unique, histogram


def census(n: int, mode: Union[CensusMode, str], kind: Union[PolynomialKind, str],
           edge_counts: Optional[Iterable[int]] = None, jobs: Optional[int] = None,
           checkpoint: bool = False, db: Optional[DatabaseManager] = None,
           no_timestamp: bool = False, progress: bool = False) -> CensusReport:
    """
    Exact census of the P-polynomials of all isomorphism classes.

    Args:
        n: Vertex count
        mode: Census mode (or its text form, e.g. 'uniform3')
        kind: Polynomial: chi, ind or match
        edge_counts: Restrict to these strata
        jobs: Worker processes (defaults to processing.jobs); never changes the counts
        checkpoint: Persist shard records and resume completed shards
        db: Bookkeeping database (defaults to the global manager when checkpointing)
        no_timestamp: Leave seconds and generated_at empty for byte-stable reports
        progress: Show a progress bar over strata
    """
    settings = get_settings()
    mode = CensusMode.parse(mode) if isinstance(mode, str) else mode
    kind = PolynomialKind(kind)
    jobs = settings.processing.jobs if jobs is None else jobs
    if jobs < 1:
        raise ValidationError(f"worker count must be >= 1, got {jobs}")

    plan = plan_enumeration(n, mode, edge_counts, settings)
    key = run_key(n, mode, kind, plan)
    start = time.perf_counter()
    logger.info(f"Census {key}: {plan.labeled:,} labeled codes in {len(plan.strata)} strata, {jobs} jobs")

    ledger = None
    done: Dict[int, np.ndarray] = {}
    if checkpoint:
        db = db or get_db_manager()
        db.create_tables()
        ledger = ShardLedger(settings.paths.checkpoints, key, db)
        done = ledger.completed()
    pending = [m for m in plan.strata if m not in done]

    results: Dict[int, np.ndarray] = dict(done)
    polynomials: Dict[int, Tuple[int, ...]] = {}
    try:
        if ledger:
            ledger.start(pending)
        for m, records, shard_polynomials in _run_shards(settings, plan, kind, pending, jobs, progress):
            for digest, coeffs in shard_polynomials.items():
                _remember(polynomials, digest, coeffs)
            results[m] = records
            if ledger:
                ledger.commit(m, records)
    except BaseException as e:
        if ledger:
            ledger.abort(f"{type(e).__name__}: {e}")
        raise

    classes, distinct, unique, histogram = reduce_records(results[m] for m in plan.strata)
    if not unique <= distinct <= classes:
        logger.error(f"Counting invariant failed: U={unique}, B={distinct}, H={classes}")
        raise CensusIntegrityError(f"U <= B <= H violated: U={unique}, B={distinct}, H={classes}")

    elapsed = time.perf_counter() - start
    report = CensusReport(
        n=n, mode=mode, polynomial=kind,
        classes=classes, distinct=distinct, unique=unique, histogram=histogram,
        stratum_classes={m: len(results[m]) for m in plan.strata},
        edge_counts=plan.strata if plan.filtered else None,
        seconds=None if no_timestamp else elapsed,
        generated_at=None if no_timestamp else datetime.utcnow().isoformat(timespec='seconds'),
    )
    logger.info(f"Census {key}: H={classes} B={distinct} U={unique} in {elapsed:.2f}s")
    if ledger:
        db.record_run(key, n, mode.label, kind.value,
                      ",".join(map(str, report.edge_counts or ())),
                      classes, distinct, unique, elapsed)
    return report


def _run_shards(settings: Settings, plan: EnumerationPlan, kind: PolynomialKind,
                strata: List[int], jobs: int, progress: bool):
    """Yield (stratum, records, polynomials) as shards finish"""
    if not strata:
        return
    with tqdm(total=len(strata), desc=f"Census n={plan.n} {plan.mode.label}", unit="stratum",
              disable=not progress) as pbar:
        if jobs <= 1 or len(strata) == 1:
            for m in strata:
                records, polynomials = shard_records(plan.n, plan.mode, kind, plan.universe, m)
                pbar.update(1)
                yield m, records, polynomials
            return
        tasks = [(settings, plan.n, plan.mode, kind, plan.universe, m) for m in strata]
        with ProcessPoolExecutor(max_workers=jobs) as executor:
            futures = [executor.submit(_shard_job, task) for task in tasks]
            for future in as_completed(futures):
                m, records, polynomials = future.result()
                pbar.update(1)
                pbar.set_postfix({'stratum': m, 'classes': len(records)})
                yield m, records, polynomials


def report_stem(report: CensusReport) -> str:
    stem = f"census_n{report.n}_{report.mode.label}_{report.polynomial.value}"
    if report.edge_counts is not None:
        stem += "_m" + "-".join(str(m) for m in report.edge_counts)
    return stem


def write_report(report: CensusReport, directory: Union[str, Path]) -> Tuple[Path, Path]:
    """Write the CSV summary row and the JSON detail; returns both paths"""
    directory = Path(directory)
    directory.mkdir(parents=True, exist_ok=True)
    stem = report_stem(report)
    csv_path = directory / f"{stem}.csv"
    json_path = directory / f"{stem}.json"
    pd.DataFrame([report.to_row()], columns=CSV_COLUMNS).to_csv(csv_path, index=False)
    with open(json_path, 'w') as handle:
        json.dump(report.to_dict(), handle, indent=2, sort_keys=True)
        handle.write("\n")
    logger.info(f"Census report written to {csv_path} and {json_path}")
    return csv_path, json_path
