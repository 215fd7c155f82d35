import pytest

from src.core.families import FamilyKind, FamilySpec, b_construction_order, generate_family
from src.core.hypergraph import Hypergraph, is_independent, is_r_uniform, make_hypergraph, superset_extension
from src.core.hypergraph_io import format_text, parse_json, parse_text, read_hypergraph, write_hypergraph
from src.core.modes import CensusMode, ModeKind
from src.polynomials.graph_polynomial import PolynomialKind
from src.polynomials.invariants import polynomial_of
from src.utils.errors import ValidationError


class TestMakeHypergraph:
    def test_normalizes_edge_order_and_duplicates(self):
        h = make_hypergraph(4, [[3, 4, 1], [2, 1], [1, 2], [4, 3, 1]])
        assert h.edge_sets() == ((1, 2), (1, 3, 4))
        assert h == make_hypergraph(4, [[1, 3, 4], [1, 2]])

    def test_rejects_out_of_range_vertex(self):
        with pytest.raises(ValidationError):
            make_hypergraph(3, [[1, 4]])

    def test_rejects_empty_edge(self):
        with pytest.raises(ValidationError):
            make_hypergraph(3, [[]])

    def test_singletons_need_the_override(self):
        with pytest.raises(ValidationError):
            make_hypergraph(3, [[2]])
        h = make_hypergraph(3, [[2]], allow_small_edges=True)
        assert h.edge_sizes() == (1,)

    def test_uniform_check(self):
        with pytest.raises(ValidationError):
            make_hypergraph(4, [[1, 2, 3], [1, 2]], uniform=3)

    def test_bad_vertex_count(self):
        with pytest.raises(ValidationError):
            make_hypergraph(0, [])
        with pytest.raises(ValidationError):
            make_hypergraph(64, [])


def test_degrees_and_predicates():
    h = make_hypergraph(5, [[1, 2, 3], [3, 4, 5]])
    assert h.degrees() == (1, 1, 2, 1, 1)
    assert is_r_uniform(h, 3)
    assert not is_r_uniform(h, 2)
    assert h.is_sperner()
    assert is_independent(h, [1, 2, 4, 5])
    assert not is_independent(h, [3, 4, 5])


def test_sperner_detects_nested_edges():
    assert not make_hypergraph(4, [[1, 2], [1, 2, 3]]).is_sperner()


def test_permuted_relabels_vertices():
    h = make_hypergraph(4, [[1, 2], [2, 3, 4]])
    assert h.permuted([4, 3, 2, 1]).edge_sets() == ((3, 4), (1, 2, 3))
    with pytest.raises(ValidationError):
        h.permuted([1, 1, 2, 3])


class TestSupersetExtension:
    def test_hypercycle_gets_a_four_edge(self, hypercycle):
        mate = superset_extension(hypercycle)
        assert mate.num_edges == hypercycle.num_edges + 1
        assert (1, 2, 3, 4) in mate.edge_sets()
        assert not is_r_uniform(mate, 3)

    @pytest.mark.parametrize("kind", [PolynomialKind.CHI, PolynomialKind.IND])
    def test_polynomials_unchanged(self, hypercycle, kind):
        mate = superset_extension(hypercycle)
        assert polynomial_of(mate, kind) == polynomial_of(hypercycle, kind)

    def test_matching_polynomial_changes(self, hypercycle):
        mate = superset_extension(hypercycle)
        assert polynomial_of(mate, PolynomialKind.MATCH) != polynomial_of(hypercycle, PolynomialKind.MATCH)

    def test_none_without_room(self):
        assert superset_extension(make_hypergraph(3, [])) is None
        assert superset_extension(make_hypergraph(3, [[1, 2, 3]])) is None


class TestModes:
    @pytest.mark.parametrize("text,kind,r", [
        ("uniform3", ModeKind.UNIFORM, 3),
        ("uniform(2)", ModeKind.UNIFORM, 2),
        ("r4", ModeKind.UNIFORM, 4),
        ("sperner", ModeKind.SPERNER, None),
        ("ALL", ModeKind.ALL, None),
    ])
    def test_parse(self, text, kind, r):
        mode = CensusMode.parse(text)
        assert mode.kind == kind
        assert mode.r == r

    def test_parse_rejects_unknown(self):
        with pytest.raises(ValidationError):
            CensusMode.parse("antichain")

    def test_eligible_masks(self):
        assert len(CensusMode.uniform(3).eligible_masks(6)) == 20
        assert len(CensusMode.all().eligible_masks(4)) == 11
        assert CensusMode.uniform(4).eligible_masks(3) == []

    def test_contains(self):
        nested = make_hypergraph(4, [[1, 2], [1, 2, 3]])
        assert CensusMode.all().contains(nested)
        assert not CensusMode.sperner().contains(nested)
        assert not CensusMode.uniform(2).contains(nested)
        assert not CensusMode.all().contains(make_hypergraph(3, [[1]], allow_small_edges=True))


class TestFamilies:
    def test_sunflower(self, sunflower_723):
        assert sunflower_723.n == 7
        assert sunflower_723.edge_sets() == ((1, 2, 3), (1, 4, 5), (1, 6, 7))

    def test_sunflower_infers_petal_count(self):
        spec = FamilySpec(FamilyKind.SUNFLOWER, n=9, p=2, r=3).resolved()
        assert spec.k == 4
        assert spec.label == "SH(9,2,3)"

    def test_sunflower_rejects_inconsistent_order(self):
        with pytest.raises(ValidationError):
            generate_family(FamilySpec(FamilyKind.SUNFLOWER, n=8, p=2, r=3))
        with pytest.raises(ValidationError):
            generate_family(FamilySpec(FamilyKind.SUNFLOWER, n=5, p=3, r=3))

    def test_hypercycle(self, hypercycle):
        assert hypercycle.n == 6
        assert set(hypercycle.edge_sets()) == {(1, 2, 3), (3, 4, 5), (1, 5, 6)}
        assert sorted(hypercycle.degrees()) == [1, 1, 1, 2, 2, 2]

    @pytest.mark.parametrize("r,p,k", [(3, 1, 4), (3, 2, 5), (4, 1, 3), (4, 3, 4), (5, 2, 6)])
    def test_sunflower_structure(self, r, p, k):
        h = generate_family(FamilySpec(FamilyKind.SUNFLOWER, r=r, p=p, k=k))
        assert h.n == r + (k - 1) * p
        assert h.num_edges == k and is_r_uniform(h, r)
        sets = [set(e) for e in h.edge_sets()]
        for i, a in enumerate(sets):
            for b in sets[i + 1:]:
                assert len(a & b) == r - p

    @pytest.mark.parametrize("m,r", [(4, 3), (5, 3), (6, 2), (4, 4), (7, 3)])
    def test_hypercycle_structure(self, m, r):
        h = generate_family(FamilySpec(FamilyKind.HYPERCYCLE, m=m, r=r))
        assert h.n == m * (r - 1)
        assert h.num_edges == m and is_r_uniform(h, r)
        assert set(h.degrees()) <= {1, 2}
        assert h.degrees().count(2) == m

    def test_hyperpath(self):
        h = generate_family(FamilySpec(FamilyKind.HYPERPATH, m=2, r=3))
        assert h.n == 5
        assert h.edge_sets() == ((1, 2, 3), (3, 4, 5))

    def test_hypercycle_needs_three_edges(self):
        with pytest.raises(ValidationError):
            generate_family(FamilySpec(FamilyKind.HYPERCYCLE, m=2, r=3))

    def test_b_construction(self):
        h = generate_family(FamilySpec(FamilyKind.B_CONSTRUCTION, p=3, r=3))
        assert h.n == b_construction_order(3, 3) == 9
        assert h.num_edges == 5
        assert is_r_uniform(h, 3)
        # the path's extremities are the glued edge's degree-2 vertices
        assert sorted(h.degrees()).count(3) == 2

    def test_complete_and_empty(self):
        assert generate_family(FamilySpec(FamilyKind.COMPLETE_R, n=5, r=3)).num_edges == 10
        assert generate_family(FamilySpec(FamilyKind.EMPTY, n=4)).num_edges == 0


class TestHypergraphFiles:
    def test_text_format(self):
        h = parse_text("hypergraph n=4\n# a comment\n1 2 3\n\n3 4   # trailing\n")
        assert h == make_hypergraph(4, [[1, 2, 3], [3, 4]])
        assert parse_text(format_text(h, comment="test")) == h

    def test_text_errors(self):
        with pytest.raises(ValidationError):
            parse_text("")
        with pytest.raises(ValidationError):
            parse_text("graph n=3\n1 2\n")
        with pytest.raises(ValidationError):
            parse_text("hypergraph n=3\n1 x\n")

    def test_json_errors(self):
        with pytest.raises(ValidationError):
            parse_json("{not json")
        with pytest.raises(ValidationError):
            parse_json('{"n": 3}')
        with pytest.raises(ValidationError):
            parse_json('{"n": 3, "edges": [1, 2]}')

    @pytest.mark.parametrize("name", ["h.hg", "h.json"])
    def test_write_then_read(self, tmp_path, sunflower_723, name):
        path = write_hypergraph(sunflower_723, tmp_path / name)
        assert read_hypergraph(path) == sunflower_723

    def test_missing_file(self, tmp_path):
        with pytest.raises(ValidationError):
            read_hypergraph(tmp_path / "missing.hg")


def test_hypergraph_is_hashable():
    a = Hypergraph.from_masks(3, [0b011, 0b110])
    b = Hypergraph.from_masks(3, [0b110, 0b011, 0b011])
    assert a == b
    assert len({a, b}) == 1
