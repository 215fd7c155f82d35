import math

import pytest

from src.bounds.asymptotics import stirling_asymptotics_report, stirling_formula_error
from src.bounds.products import labeled_count, product_bound
from src.bounds.sequences import SequenceKind, ratio_sequence, ratio_value
from src.bounds.table import BoundTable
from src.isomorphism.burnside import SubsetModel
from src.polynomials.graph_polynomial import PolynomialKind
from src.utils.errors import BudgetExceededError, ValidationError


def values(table, quantity):
    return [float(v) for _, v in table.series(quantity)]


def strictly_decreasing(xs):
    return all(a > b for a, b in zip(xs, xs[1:]))


class TestProductBounds:
    def test_small_values(self):
        assert product_bound(PolynomialKind.CHI, 4) == 42
        assert product_bound("ind", 3) == 9
        # the stated matching formula; the census exceeds it
        assert product_bound("match", 4) == 2
        assert product_bound("match", 6, 3) == 2

    def test_limits(self):
        with pytest.raises(BudgetExceededError):
            product_bound("chi", 501)
        with pytest.raises(ValidationError):
            product_bound("ind", 0)

    def test_labeled_counts(self):
        assert labeled_count(4, 3).exact == 16
        assert labeled_count(2, model=SubsetModel.ALL).log2 == 4
        assert labeled_count(3, model="model").log2 == 4
        big = labeled_count(30)
        assert big.log2 == 2 ** 30
        assert big.exact is None


class TestSequenceKind:
    @pytest.mark.parametrize("text,label", [
        ("chi_general", "chi_general"),
        ("chi_uniform(3)", "chi_uniform(3)"),
        ("ind_uniform3", "ind_uniform(3)"),
        ("match_general", "match_general"),
        ("match_general(3)", "match_general(3)"),
        ("chi_exact_general", "chi_exact_general"),
    ])
    def test_parse(self, text, label):
        assert SequenceKind.parse(text).label == label

    @pytest.mark.parametrize("text", ["chi", "chi_uniform", "ind_general(2)", "poly_general"])
    def test_invalid(self, text):
        with pytest.raises(ValidationError):
            SequenceKind.parse(text)


class TestRatioSequences:
    def test_chi_general_decreasing_and_small(self):
        table = ratio_sequence("chi_general", range(6, 61))
        assert len(table) == 55
        xs = values(table, "chi_general")
        assert strictly_decreasing(xs)
        assert xs[-1] < 1e-10

    def test_chi_general_closed_form(self):
        n = 10
        expected = ((n * n + n) * math.log2(n) + n * n * math.log2(math.e)) / 2 ** n
        assert float(ratio_value(n, SequenceKind.parse("chi_general"))) == pytest.approx(expected, rel=1e-9)

    def test_chi_uniform_at_ten_thousand(self):
        assert float(ratio_value(10 ** 4, SequenceKind.parse("chi_uniform(3)"))) < 0.01

    def test_chi_uniform_decreasing(self):
        assert strictly_decreasing(values(ratio_sequence("chi_uniform(3)", range(20, 200)), "chi_uniform(3)"))

    def test_ind_decreasing(self):
        assert strictly_decreasing(values(ratio_sequence("ind_general", range(5, 61)), "ind_general"))
        assert strictly_decreasing(values(ratio_sequence("ind_uniform(3)", range(20, 200)), "ind_uniform(3)"))

    def test_ind_closed_form(self):
        n = 8
        natural = n * (n + 1) / 2 * math.log(n * math.e) + n * math.log(n)
        expected = natural / (2 ** n * math.log(2))
        assert float(ratio_value(n, SequenceKind.parse("ind_general"))) == pytest.approx(expected, rel=1e-9)

    def test_match_decreasing(self):
        assert strictly_decreasing(values(ratio_sequence("match_general", range(6, 61)), "match_general"))
        uniform = values(ratio_sequence("match_uniform(3)", range(12, 1200, 3)), "match_uniform(3)")
        assert strictly_decreasing(uniform)

    def test_uniform_skips_vanishing_denominator(self):
        table = ratio_sequence("chi_uniform(3)", range(1, 6))
        assert [n for n, _ in table.series("chi_uniform(3)")] == [3, 4, 5]

    def test_exact_companion(self):
        value = ratio_value(4, SequenceKind.parse("chi_exact_general"))
        assert float(value) == pytest.approx(math.log2(42 * 24) / 16, rel=1e-12)

    @pytest.mark.parametrize("poly", ["chi", "ind", "match"])
    def test_exact_companion_below_closed_form(self, poly):
        for n in range(2, 61):
            closed = ratio_value(n, SequenceKind.parse(f"{poly}_general"))
            exact = ratio_value(n, SequenceKind.parse(f"{poly}_exact_general"))
            assert exact < closed, n

    def test_limits(self):
        with pytest.raises(ValidationError):
            ratio_sequence("chi_general", [0])
        with pytest.raises(BudgetExceededError):
            ratio_sequence("chi_general", [10 ** 6 + 1])


class TestStirlingReport:
    def test_maximizer_and_unimodality(self):
        table = stirling_asymptotics_report(range(1, 31))
        assert table.get(10, "K_n").value == 5
        assert all(v == 1 for _, v in table.series("unimodal"))
        assert table.get(1, "n_over_ln_n") is None

    def test_stirling_error(self):
        assert float(stirling_formula_error(10)) < 0.01
        errors = [float(stirling_formula_error(n)) for n in range(10, 101)]
        assert strictly_decreasing(errors)

    def test_limit(self):
        with pytest.raises(BudgetExceededError):
            stirling_asymptotics_report([301])


class TestBoundTable:
    def test_csv(self, tmp_path):
        table = BoundTable()
        table.add(4, "chi_product", "exact", 42)
        table.add(4, "chi_general", "float", 0.5)
        text = table.to_csv(tmp_path / "bounds.csv")
        assert text.splitlines() == ["n,quantity,exact_or_log2,value", "4,chi_product,exact,42",
                                     "4,chi_general,float,0.5"]
        assert (tmp_path / "bounds.csv").read_text() == text

    def test_gnuplot(self):
        table = ratio_sequence("chi_general", range(6, 9))
        lines = table.to_gnuplot("chi_general").splitlines()
        assert lines[0] == "# n chi_general"
        assert [line.split()[0] for line in lines[1:]] == ["6", "7", "8"]
