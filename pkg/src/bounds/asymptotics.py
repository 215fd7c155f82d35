"""
Stirling-number asymptotics report: the exact maximizer K_n of S(n, .) next to
n / ln n and n / W(n), and the relative error of Stirling's formula for n!.
Reported only; no convergence is asserted.
"""
import logging
import math
from typing import Iterable

from mpmath import mp

from .table import BoundTable
from ..polynomials.stirling import stirling_row
from ..utils.config import get_settings
from ..utils.errors import BudgetExceededError, ValidationError

logger = logging.getLogger(__name__)

PRECISION_BITS = 128


def stirling_formula_error(n: int):
    """|n! - sqrt(2 pi n) (n/e)^n| / n!"""
    with mp.workprec(PRECISION_BITS):
        exact = mp.mpf(math.factorial(n))
        approx = mp.sqrt(2 * mp.pi * n) * (mp.mpf(n) / mp.e) ** n
        return abs(exact - approx) / exact


def stirling_asymptotics_report(n_range: Iterable[int]) -> BoundTable:
    """
    Per n: K_n (exact), whether row n is unimodal (exact 0/1), n/ln n, K_n/(n/ln n),
    n/W(n) and the Stirling-formula relative error. n/ln n and its ratio are
    omitted at n = 1.
    """
    max_n = get_settings().limits.stirling_report_max_n
    table = BoundTable()
    for n in n_range:
        if n < 1:
            raise ValidationError(f"Stirling report starts at n = 1, got {n}")
        if n > max_n:
            logger.error(f"Stirling report refused at n={n} (limit {max_n})")
            raise BudgetExceededError("stirling_report_max_n", n, max_n)
        row = stirling_row(n)
        k_n = row.argmax()
        unimodal = row.is_unimodal()
        if not unimodal:
            logger.error(f"Stirling row {n} is not unimodal")
        table.add(n, "K_n", 'exact', k_n)
        table.add(n, "unimodal", 'exact', int(unimodal))
        with mp.workprec(PRECISION_BITS):
            if n > 1:
                n_over_ln = mp.mpf(n) / mp.log(n)
                table.add(n, "n_over_ln_n", 'float', n_over_ln)
                table.add(n, "K_n_over_n_over_ln_n", 'float', k_n / n_over_ln)
            table.add(n, "n_over_W_n", 'float', mp.mpf(n) / mp.re(mp.lambertw(n)))
        table.add(n, "stirling_rel_error", 'float', stirling_formula_error(n))
    return table
