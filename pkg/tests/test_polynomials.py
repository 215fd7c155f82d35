import math

import numpy as np
import pytest

from src.core.hypergraph import is_independent, is_r_uniform, make_hypergraph
from src.polynomials.graph_polynomial import (Basis, GraphPolynomial, PolynomialKind, falling_factorial_coeffs,
                                              to_falling_factorial, to_monomial)
from src.polynomials.invariants import (chromatic_partition_vector, chromatic_poly, independence_counts,
                                        independence_poly, matching_counts, matching_poly, polynomial_of)
from src.polynomials.oracles import (brute_force_independence_counts, brute_force_matching_counts,
                                     count_proper_colorings)
from src.polynomials.stirling import stirling2, stirling_row
from src.utils.bits import mask_to_vertices
from src.utils.errors import BudgetExceededError, ValidationError


class TestChromatic:
    def test_single_triple(self, triple):
        chi = chromatic_poly(triple)
        assert chi.basis == Basis.FALLING_FACTORIAL
        assert chi.coeffs == (0, 0, 3, 1)
        assert to_monomial(chi).coeffs == (0, -1, 0, 1)

    def test_triangle_graph(self):
        chi = chromatic_poly(make_hypergraph(3, [[1, 2], [2, 3], [1, 3]]))
        assert chi.coeffs == (0, 0, 0, 1)
        assert [chi.evaluate(k) for k in range(5)] == [0, 0, 0, 6, 24]

    def test_edgeless(self):
        h = make_hypergraph(4, [])
        assert to_monomial(chromatic_poly(h)).coeffs == (0, 0, 0, 0, 1)
        assert chromatic_partition_vector(h).as_list() == [stirling2(4, i) for i in range(1, 5)]

    def test_partition_vector_sums_to_bell_number_without_edges(self):
        counts = chromatic_partition_vector(make_hypergraph(6, [])).as_list()
        assert sum(counts) == 203

    def test_refuses_above_dp_limit(self):
        with pytest.raises(BudgetExceededError) as info:
            chromatic_poly(make_hypergraph(21, []))
        assert info.value.budget == "dp_max_n"
        with pytest.raises(BudgetExceededError):
            chromatic_poly(make_hypergraph(8, []), limit=7)


class TestIndependence:
    def test_single_triple(self, triple):
        assert independence_counts(triple) == [1, 3, 3, 0]
        assert independence_poly(triple).coeffs == (1, 3, 3)

    def test_edgeless_is_binomial(self):
        assert independence_counts(make_hypergraph(5, [])) == [math.comb(5, i) for i in range(6)]

    def test_refuses_above_limit(self):
        with pytest.raises(BudgetExceededError):
            independence_counts(make_hypergraph(6, []), limit=5)


class TestMatching:
    def test_two_disjoint_edges(self):
        m = matching_poly(make_hypergraph(4, [[1, 2], [3, 4]]))
        assert m.coeffs == (0, 2, 1)

    def test_edgeless_is_zero(self):
        assert matching_poly(make_hypergraph(3, [])).is_zero()
        assert matching_counts(make_hypergraph(3, [])) == [1]

    def test_sunflower_has_no_disjoint_pair(self, sunflower_723):
        assert matching_counts(sunflower_723) == [1, 3]

    def test_node_budget(self):
        k6 = make_hypergraph(6, [[a, b] for a in range(1, 7) for b in range(a + 1, 7)])
        with pytest.raises(BudgetExceededError):
            matching_counts(k6, max_nodes=5)


class TestOracleSuite:
    """Every fixture hypergraph against the brute-force definitions"""

    def test_corpus_size(self, corpus):
        assert len(corpus) >= 100
        assert all(h.n <= 6 for h in corpus)

    def test_chromatic_matches_coloring_counts(self, corpus):
        for h in corpus:
            chi = chromatic_poly(h)
            for k in range(h.n + 2):
                assert chi.evaluate(k) == count_proper_colorings(h, k), (h, k)

    def test_independence_matches_subset_enumeration(self, corpus):
        for h in corpus:
            assert independence_counts(h) == brute_force_independence_counts(h), h

    def test_matching_matches_edge_subset_enumeration(self, corpus):
        for h in corpus:
            assert matching_counts(h) == brute_force_matching_counts(h), h

    def test_coloring_budget(self, triple):
        with pytest.raises(BudgetExceededError):
            count_proper_colorings(triple, 10, budget=999)

    def test_negative_colors(self, triple):
        with pytest.raises(ValidationError):
            count_proper_colorings(triple, -1)


class TestCorpusInvariants:
    """Coefficient bounds and relabeling invariance over the fixture corpus"""

    def test_partition_counts_bounded_by_stirling(self, corpus):
        for h in corpus:
            for i, b in enumerate(chromatic_partition_vector(h).as_list(), start=1):
                assert 0 <= b <= stirling2(h.n, i), (h, i)

    def test_independence_counts_bounded_by_binomials(self, corpus):
        for h in corpus:
            counts = independence_counts(h)
            assert counts[0] == 1
            for i, c in enumerate(counts):
                assert 0 <= c <= math.comb(h.n, i), (h, i)

    def test_uniform_independence_loses_one_set_per_edge(self, corpus):
        checked = 0
        for h in corpus:
            sizes = set(h.edge_sizes())
            if len(sizes) != 1:
                continue
            r = sizes.pop()
            assert is_r_uniform(h, r)
            assert independence_counts(h)[r] == math.comb(h.n, r) - h.num_edges, h
            checked += 1
        assert checked >= 10

    def test_single_edge_matchings_count_edges(self, corpus):
        for h in corpus:
            counts = matching_counts(h)
            assert (counts[1] if len(counts) > 1 else 0) == h.num_edges, h

    @pytest.mark.parametrize("kind", list(PolynomialKind))
    def test_relabeling_preserves_polynomials(self, corpus, kind):
        rng = np.random.default_rng(7)
        for h in corpus:
            perm = [int(v) + 1 for v in rng.permutation(h.n)]
            assert polynomial_of(h.permuted(perm), kind).coeffs == polynomial_of(h, kind).coeffs, (h, perm)

    def test_independence_closed_under_subsets(self, corpus):
        for h in corpus:
            for s in range(1 << h.n):
                if not is_independent(h, mask_to_vertices(s)):
                    continue
                for v in mask_to_vertices(s):
                    assert is_independent(h, mask_to_vertices(s & ~(1 << (v - 1)))), (h, s, v)


class TestBases:
    def test_falling_factorial_coeffs(self):
        # X(X-1)(X-2) = X^3 - 3X^2 + 2X
        assert falling_factorial_coeffs(3) == (0, 2, -3, 1)

    def test_conversions_are_inverse(self, corpus):
        for h in corpus[:40]:
            chi = chromatic_poly(h)
            assert to_falling_factorial(to_monomial(chi)).coeffs == chi.coeffs

    def test_equality_across_bases(self, triple):
        chi = chromatic_poly(triple)
        assert chi == GraphPolynomial.monomial([0, -1, 0, 1])
        assert hash(chi) == hash(to_monomial(chi))

    def test_json(self, triple):
        chi = chromatic_poly(triple)
        assert GraphPolynomial.from_json(chi.to_json()).coeffs == chi.coeffs
        with pytest.raises(ValidationError):
            GraphPolynomial.from_json('{"basis": "monomial"}')

    def test_text(self):
        assert str(GraphPolynomial.monomial([0, -1, 0, 1])) == "X^3 - X"
        assert str(GraphPolynomial.monomial([])) == "0"

    def test_polynomial_of_uses_monomial_basis(self, triple):
        for kind in PolynomialKind:
            assert polynomial_of(triple, kind).basis == Basis.MONOMIAL


class TestStirling:
    def test_small_rows(self):
        assert stirling_row(0).values == (1,)
        assert stirling_row(5).values == (0, 1, 15, 25, 10, 1)
        assert stirling_row(5)[9] == 0

    def test_rows_unimodal_up_to_300(self):
        assert all(stirling_row(n).is_unimodal() for n in range(301))

    def test_maximizer(self):
        assert stirling_row(10).argmax() == 5
        assert stirling_row(1).argmax() == 1

    def test_negative_row(self):
        with pytest.raises(ValidationError):
            stirling_row(-1)
