"""
BoundTable: rows of (n, quantity, exact integer or high-precision float).
"""
import logging
from dataclasses import dataclass, field
from pathlib import Path
from typing import List, Optional, Tuple, Union

import pandas as pd
from mpmath import mp

logger = logging.getLogger(__name__)

CSV_COLUMNS = ['n', 'quantity', 'exact_or_log2', 'value']
DIGITS = 20


@dataclass(frozen=True)
class BoundRow:
    """
    One table entry. `form` is 'exact' (value is an int), 'log2' (value is the
    base-2 logarithm of the quantity) or 'float' (value is the quantity itself).
    """
    n: int
    quantity: str
    form: str
    value: object

    def formatted(self) -> str:
        if self.form == 'exact':
            return str(self.value)
        return mp.nstr(mp.mpf(self.value), DIGITS)


@dataclass
class BoundTable:
    rows: List[BoundRow] = field(default_factory=list)

    def add(self, n: int, quantity: str, form: str, value) -> BoundRow:
        row = BoundRow(n, quantity, form, value)
        self.rows.append(row)
        return row

    def quantities(self) -> List[str]:
        seen = []
        for row in self.rows:
            if row.quantity not in seen:
                seen.append(row.quantity)
        return seen

    def series(self, quantity: str) -> List[Tuple[int, object]]:
        """(n, value) pairs of one quantity, in n order"""
        return sorted(((r.n, r.value) for r in self.rows if r.quantity == quantity), key=lambda item: item[0])

    def get(self, n: int, quantity: str) -> Optional[BoundRow]:
        for row in self.rows:
            if row.n == n and row.quantity == quantity:
                return row
        return None

    def __len__(self) -> int:
        return len(self.rows)

    def to_frame(self) -> pd.DataFrame:
        return pd.DataFrame([{'n': r.n, 'quantity': r.quantity, 'exact_or_log2': r.form,
                              'value': r.formatted()} for r in self.rows], columns=CSV_COLUMNS)

    def to_csv(self, path: Union[str, Path, None] = None) -> str:
        """CSV text; also written to `path` when given"""
        text = self.to_frame().to_csv(index=False)
        if path is not None:
            Path(path).parent.mkdir(parents=True, exist_ok=True)
            Path(path).write_text(text)
            logger.info(f"Bound table written to {path} ({len(self.rows)} rows)")
        return text

    def to_gnuplot(self, quantity: str) -> str:
        """Two whitespace-separated columns, n and value, with a comment header"""
        lines = [f"# n {quantity}"]
        for row in sorted((r for r in self.rows if r.quantity == quantity), key=lambda r: r.n):
            lines.append(f"{row.n} {row.formatted()}")
        return "\n".join(lines) + "\n"
