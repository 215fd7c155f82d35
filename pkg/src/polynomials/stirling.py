"""
Stirling numbers of the second kind as exact integers.
Rows are built once through S(n,i) = i*S(n-1,i) + S(n-1,i-1) and memoized.
"""
import logging
import threading
from dataclasses import dataclass
from typing import List, Tuple

from ..utils.errors import ValidationError

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class StirlingRow:
    """S(n,0..n)"""
    n: int
    values: Tuple[int, ...]

    def __getitem__(self, i: int) -> int:
        return self.values[i] if 0 <= i <= self.n else 0

    def is_unimodal(self) -> bool:
        """Strictly increasing to the peak, then non-increasing once and strictly decreasing (over i >= 1)"""
        seq = self.values[1:]
        if len(seq) <= 1:
            return True
        i = 0
        while i + 1 < len(seq) and seq[i] < seq[i + 1]:
            i += 1
        # at most two consecutive maxima
        if i + 1 < len(seq) and seq[i] == seq[i + 1]:
            i += 1
        while i + 1 < len(seq) and seq[i] > seq[i + 1]:
            i += 1
        return i == len(seq) - 1

    def argmax(self) -> int:
        """Smallest i >= 1 maximizing S(n,i); 0 for n = 0"""
        if self.n == 0:
            return 0
        best = max(self.values[1:])
        return self.values.index(best, 1)


# Shared triangle; grows under the lock, rows are never mutated afterwards
_rows: List[Tuple[int, ...]] = [(1,)]
_lock = threading.Lock()


def _extend_to(n: int):
    with _lock:
        while len(_rows) <= n:
            prev = _rows[-1]
            m = len(_rows)
            row = [0] * (m + 1)
            for i in range(1, m + 1):
                row[i] = i * (prev[i] if i < m else 0) + prev[i - 1]
            _rows.append(tuple(row))


def stirling_row(n: int) -> StirlingRow:
    """
    Exact row S(n,0..n).

    Args:
        n: Set size, n >= 0

    Returns:
        StirlingRow with S(0,0) = 1 and S(n,0) = 0 for n >= 1
    """
    if n < 0:
        raise ValidationError(f"Stirling row needs n >= 0, got {n}")
    if n >= len(_rows):
        _extend_to(n)
    return StirlingRow(n, _rows[n])


def stirling2(n: int, i: int) -> int:
    return stirling_row(n)[i]


def stirling_argmax(n: int) -> int:
    """
    K_n: the smallest i maximizing S(n,i).
    Unimodality of the row is checked as well and logged as an error if it fails.
    """
    if n < 1:
        raise ValidationError(f"K_n needs n >= 1, got {n}")
    row = stirling_row(n)
    if not row.is_unimodal():
        logger.error(f"Stirling row {n} is not unimodal")
    return row.argmax()
