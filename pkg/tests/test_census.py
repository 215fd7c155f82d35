import json
import math
from fractions import Fraction
from pathlib import Path

import numpy as np
import pytest

from src.bounds.products import product_bound
from src.census import processor
from src.census.checkpoint import RECORD_DTYPE, CensusCheckpoint, fingerprint_digest, make_records
from src.census.crosschecks import uniform_vs_general_check, verify_superset_mates
from src.census.enumerator import (canonical_code, decode, encode, enumerate_nonisomorphic, image_table,
                                   orbit_codes, plan_enumeration)
from src.census.family_claims import Verdict, sunflower_claim, verify_family_claims
from src.census.processor import census, reduce_records, run_key, write_report
from src.census.selfcheck import run_selfcheck
from src.census.witness import Stratum, witness_search
from src.core.hypergraph import is_r_uniform, make_hypergraph, superset_extension
from src.core.modes import CensusMode
from src.database.db_manager import get_db_manager
from src.isomorphism.burnside import count_nonisomorphic_runiform
from src.isomorphism.canonical import are_isomorphic
from src.polynomials.graph_polynomial import GraphPolynomial, PolynomialKind
from src.polynomials.invariants import polynomial_of
from src.utils.errors import (BudgetExceededError, CensusIntegrityError, FeasibilityGuardError,
                              ValidationError)

SNAPSHOT = Path(__file__).parent / "fixtures" / "ratio_snapshot.json"
UNIFORM3 = CensusMode.uniform(3)


class TestPlan:
    def test_full_plan(self):
        plan = plan_enumeration(6, UNIFORM3)
        assert plan.universe_size == 20
        assert plan.strata == tuple(range(21))
        assert plan.labeled == 2 ** 20
        assert not plan.filtered

    def test_full_enumeration_guard(self):
        with pytest.raises(FeasibilityGuardError) as info:
            plan_enumeration(7, UNIFORM3)
        assert info.value.guard == "full_universe_bits"

    def test_stratum_plan(self):
        plan = plan_enumeration(7, UNIFORM3, edge_counts=[3])
        assert plan.filtered
        assert plan.labeled == math.comb(35, 3) == 6545

    def test_stratum_guard(self):
        with pytest.raises(FeasibilityGuardError) as info:
            plan_enumeration(7, UNIFORM3, edge_counts=[17])
        assert info.value.guard == "max_stratum_labeled"

    def test_permutation_guard(self):
        with pytest.raises(FeasibilityGuardError) as info:
            plan_enumeration(9, UNIFORM3, edge_counts=[1])
        assert info.value.guard == "max_permutation_n"

    def test_stratum_out_of_range(self):
        with pytest.raises(ValidationError):
            plan_enumeration(4, UNIFORM3, edge_counts=[5])


class TestOrbits:
    def test_orbit_of_single_edge(self):
        universe = tuple(UNIFORM3.eligible_masks(4))
        table = image_table(4, universe)
        assert table.shape == (24, 4)
        assert list(orbit_codes(table, 0b0100)) == [1, 2, 4, 8]
        assert canonical_code(table, 0b1000) == 1

    def test_encode_decode(self, hypercycle):
        universe = tuple(UNIFORM3.eligible_masks(6))
        assert decode(6, universe, encode(hypercycle, universe)) == hypercycle
        with pytest.raises(ValidationError):
            encode(make_hypergraph(6, [[1, 2]]), universe)

    def test_representatives_are_pairwise_non_isomorphic(self):
        classes = list(enumerate_nonisomorphic(5, CensusMode.uniform(2)))
        assert len(classes) == 34
        for i, a in enumerate(classes):
            assert not any(are_isomorphic(a, b) for b in classes[i + 1:])

    def test_sperner_mode(self):
        classes = list(enumerate_nonisomorphic(3, CensusMode.sperner()))
        assert len(classes) == 5
        assert all(h.is_sperner() for h in classes)

    def test_worker_count_does_not_change_output(self):
        assert (list(enumerate_nonisomorphic(5, UNIFORM3, jobs=1))
                == list(enumerate_nonisomorphic(5, UNIFORM3, jobs=2)))


class TestCensus:
    def test_reference_point(self):
        report = census(4, UNIFORM3, PolynomialKind.CHI)
        assert (report.classes, report.distinct, report.unique) == (5, 5, 5)
        assert report.complete
        assert report.histogram == {1: 5}
        assert report.stratum_classes == {m: 1 for m in range(5)}

    @pytest.mark.parametrize("n", [3, 4, 5])
    def test_counting_chain(self, n):
        report = census(n, "uniform3", "chi")
        burnside = count_nonisomorphic_runiform(n, 3)
        labeled = 2 ** math.comb(n, 3)
        assert report.classes == burnside
        assert report.unique <= report.distinct <= report.classes <= labeled <= burnside * math.factorial(n)

    @pytest.mark.slow
    def test_counting_chain_six_vertices(self):
        report = census(6, UNIFORM3, PolynomialKind.CHI, jobs=2)
        assert report.classes == 2136
        assert report.unique <= report.distinct <= report.classes <= 2 ** 20 <= 2136 * math.factorial(6)

    @pytest.mark.parametrize("kind", list(PolynomialKind))
    def test_general_mode(self, kind):
        report = census(4, CensusMode.all(), kind)
        assert report.unique <= report.distinct <= report.classes
        assert sum(size * count for size, count in report.histogram.items()) == report.classes

    def test_distinct_chromatic_below_product_bound(self):
        assert census(4, CensusMode.all(), PolynomialKind.CHI).distinct <= product_bound(PolynomialKind.CHI, 4) == 42

    @pytest.mark.parametrize("n", [3, 4])
    def test_matching_census_exceeds_matching_product(self, n):
        distinct = census(n, CensusMode.all(), PolynomialKind.MATCH).distinct
        assert distinct > product_bound(PolynomialKind.MATCH, n)

    def test_matching_census_in_sperner_mode(self):
        report = census(4, CensusMode.sperner(), PolynomialKind.MATCH)
        assert report.distinct < report.classes

    def test_edge_count_filter(self):
        report = census(5, UNIFORM3, PolynomialKind.IND, edge_counts=[2, 3])
        assert report.edge_counts == (2, 3)
        assert set(report.stratum_classes) == {2, 3}

    def test_guard_surfaces(self):
        with pytest.raises(FeasibilityGuardError):
            census(7, UNIFORM3, PolynomialKind.CHI)

    def test_bad_jobs(self):
        with pytest.raises(ValidationError):
            census(4, UNIFORM3, PolynomialKind.CHI, jobs=0)


class TestReduce:
    def test_counts(self):
        records = make_records([(1, 10), (2, 10), (3, 11), (4, 12), (5, 12), (6, 12)])
        classes, distinct, unique, histogram = reduce_records([records])
        assert (classes, distinct, unique) == (6, 3, 1)
        assert histogram == {1: 1, 2: 1, 3: 1}

    def test_duplicate_canonical_digest(self):
        with pytest.raises(CensusIntegrityError):
            reduce_records([make_records([(1, 10)]), make_records([(1, 11)])])

    def test_empty(self):
        assert reduce_records([]) == (0, 0, 0, {})

    def test_fingerprint_collision_is_fatal(self):
        table = {}
        processor._remember(table, 7, (1, 2))
        processor._remember(table, 7, (1, 2))
        with pytest.raises(CensusIntegrityError):
            processor._remember(table, 7, (1, 3))

    def test_fingerprint_is_basis_independent(self, triple):
        p = GraphPolynomial.monomial([0, -1, 0, 1])
        assert fingerprint_digest(p) == fingerprint_digest(GraphPolynomial.falling([0, 0, 3, 1]))


class TestCheckpointFile:
    def test_append_and_read(self, tmp_path):
        ckpt = CensusCheckpoint(tmp_path, "n4_uniform3_chi")
        first = make_records([(1, 2), (3, 4)])
        second = make_records([(5, 6)])
        assert ckpt.append(first) == (0, 2)
        assert ckpt.append(second) == (2, 1)
        assert ckpt.read(0, 2).tolist() == first.tolist()
        assert ckpt.read(2, 1).tolist() == second.tolist()

    def test_torn_tail_is_cut(self, tmp_path):
        ckpt = CensusCheckpoint(tmp_path, "run")
        ckpt.append(make_records([(1, 2)]))
        with open(ckpt.path, "ab") as handle:
            handle.write(b"\x00" * 5)
        assert ckpt.append(make_records([(7, 8)])) == (1, 1)
        assert ckpt.path.stat().st_size == 2 * RECORD_DTYPE.itemsize

    def test_short_read(self, tmp_path):
        ckpt = CensusCheckpoint(tmp_path, "run")
        ckpt.append(make_records([(1, 2)]))
        with pytest.raises(OSError):
            ckpt.read(0, 3)


class TestDeterminism:
    def _bytes(self, report, directory):
        csv_path, json_path = write_report(report, directory)
        return csv_path.read_bytes(), json_path.read_bytes()

    def test_jobs_do_not_change_reports(self, tmp_path):
        single = census(5, UNIFORM3, PolynomialKind.CHI, jobs=1, no_timestamp=True)
        pooled = census(5, UNIFORM3, PolynomialKind.CHI, jobs=3, no_timestamp=True)
        assert self._bytes(single, tmp_path / "a") == self._bytes(pooled, tmp_path / "b")

    def test_report_files(self, tmp_path):
        report = census(4, UNIFORM3, PolynomialKind.CHI, no_timestamp=True)
        csv_path, json_path = write_report(report, tmp_path)
        assert csv_path.name == "census_n4_uniform3_chi.csv"
        lines = csv_path.read_text().splitlines()
        assert lines[0] == "n,r_or_mode,P,H,B,U,U_over_H,B_over_H,seconds"
        assert lines[1] == "4,3,chi,5,5,5,1.0,1.0,"
        data = json.loads(json_path.read_text())
        assert data["U_over_H"] == "1"
        assert data["generated_at"] is None

    def test_resume_after_interruption(self, tmp_path, monkeypatch, settings):
        reference = census(5, UNIFORM3, PolynomialKind.CHI, no_timestamp=True)
        real_shard_records = processor.shard_records

        def failing(n, mode, kind, universe, m):
            if m == 4:
                raise KeyboardInterrupt
            return real_shard_records(n, mode, kind, universe, m)

        monkeypatch.setattr(processor, "shard_records", failing)
        with pytest.raises(KeyboardInterrupt):
            census(5, UNIFORM3, PolynomialKind.CHI, checkpoint=True, no_timestamp=True)

        db = get_db_manager()
        key = run_key(5, UNIFORM3, PolynomialKind.CHI, plan_enumeration(5, UNIFORM3))
        assert sorted(db.get_completed_shards(key)) == [0, 1, 2, 3]
        assert db.get_shard_status(key, 4) == 'failed'

        resumed_strata = []

        def recording(n, mode, kind, universe, m):
            resumed_strata.append(m)
            return real_shard_records(n, mode, kind, universe, m)

        monkeypatch.setattr(processor, "shard_records", recording)
        resumed = census(5, UNIFORM3, PolynomialKind.CHI, checkpoint=True, no_timestamp=True)
        assert resumed_strata == list(range(4, 11))
        assert self._bytes(resumed, tmp_path / "a") == self._bytes(reference, tmp_path / "b")
        assert db.get_runs()[0]['H'] == 34

    def test_lost_checkpoint_file_starts_over(self, settings):
        census(4, UNIFORM3, PolynomialKind.CHI, checkpoint=True)
        for path in Path(settings.paths.checkpoints).iterdir():
            path.unlink()
        report = census(4, UNIFORM3, PolynomialKind.CHI, checkpoint=True)
        assert report.classes == 5


class TestRatioSnapshot:
    """Exact U/H and B/H of the 3-uniform chromatic census against tests/fixtures/ratio_snapshot.json"""

    @pytest.fixture(scope="class")
    def stored(self):
        return json.loads(SNAPSHOT.read_text())

    def _check(self, stored, n):
        report = census(n, UNIFORM3, PolynomialKind.CHI)
        assert str(report.unique_fraction) == stored[str(n)]["U_over_H"]
        assert str(report.distinct_fraction) == stored[str(n)]["B_over_H"]

    def test_snapshot_values(self, stored):
        assert Fraction(stored["4"]["U_over_H"]) == 1
        assert Fraction(stored["5"]["U_over_H"]) == Fraction(10, 34)
        assert Fraction(stored["6"]["B_over_H"]) == Fraction(189, 2136)

    @pytest.mark.parametrize("n", [4, 5])
    def test_small(self, stored, n):
        self._check(stored, n)

    @pytest.mark.slow
    def test_six_vertices(self, stored):
        self._check(stored, 6)


class TestWitness:
    def test_sunflower_with_three_petals_has_a_mate(self, sunflower_723):
        result = witness_search(sunflower_723, PolynomialKind.CHI)
        assert result.labeled_candidates == 6545
        assert result.found
        target = polynomial_of(sunflower_723, PolynomialKind.CHI)
        for mate in result.mates:
            assert is_r_uniform(mate, 3) and mate.num_edges == 3
            assert polynomial_of(mate, PolynomialKind.CHI).coeffs == target.coeffs
            assert not are_isomorphic(mate, sunflower_723)

    def test_hypercycle_is_three_uniform_unique(self, hypercycle):
        # chi fixes the edge count among 3-uniform hypergraphs, so one stratum suffices
        result = witness_search(hypercycle, PolynomialKind.CHI, Stratum.EDGE_COUNT)
        assert not result.found
        assert result.classes_scanned > 1

    @pytest.mark.slow
    def test_hypercycle_has_no_mate_in_full_census(self, hypercycle):
        result = witness_search(hypercycle, PolynomialKind.CHI, Stratum.MODE, jobs=8)
        assert result.labeled_candidates == 2 ** 20
        assert not result.found

    def test_single_edge_has_superset_mate_in_mode_all(self):
        h = make_hypergraph(3, [[1, 2]])
        result = witness_search(h, PolynomialKind.CHI, Stratum.MODE, mode=CensusMode.all())
        assert result.labeled_candidates == 16
        assert len(result.mates) == 1
        assert are_isomorphic(result.mates[0], make_hypergraph(3, [[1, 2], [1, 2, 3]]))

    def test_mode_must_contain_target(self, triple):
        with pytest.raises(ValidationError):
            witness_search(triple, PolynomialKind.CHI, mode=CensusMode.uniform(2))

    def test_budget(self, sunflower_723):
        with pytest.raises(BudgetExceededError) as info:
            witness_search(sunflower_723, PolynomialKind.CHI, max_labeled=1000)
        assert info.value.budget == "witness_max_labeled"

    def test_result_dict(self, triple):
        data = witness_search(triple, PolynomialKind.IND).to_dict()
        assert data["stratum"] == "uniform3/n=3/1 edges"
        assert data["mates"] == []


class TestStructuralChecks:
    def test_superset_mate_of_hypercycle(self, hypercycle):
        mate = superset_extension(hypercycle)
        assert not is_r_uniform(mate, 3)
        for kind in (PolynomialKind.CHI, PolynomialKind.IND):
            assert polynomial_of(mate, kind).coeffs == polynomial_of(hypercycle, kind).coeffs

    @pytest.mark.parametrize("kind", [PolynomialKind.CHI, PolynomialKind.IND])
    def test_superset_mates_hold(self, kind):
        report = verify_superset_mates(4, kind)
        assert report.passed
        assert 0 < report.extendable < report.classes

    def test_superset_mates_reject_matching(self):
        with pytest.raises(ValidationError):
            verify_superset_mates(3, PolynomialKind.MATCH)

    @pytest.mark.parametrize("kind", list(PolynomialKind))
    def test_uniform_within_general(self, kind):
        report = uniform_vs_general_check(4, 3, kind)
        assert report.passed
        assert report.distinct_uniform <= report.distinct_general

    def test_family_claims_small(self):
        report = verify_family_claims(3, 4)
        assert report.count(Verdict.REFUTES) == 0
        assert report.count(Verdict.OUT_OF_SCALE) == 1
        assert report.count(Verdict.CONFIRMS) == 5

    @pytest.mark.parametrize("r,p,k,claim,expected", [
        (3, 1, 4, "r-chi-unique", True),
        (3, 2, 2, "r-chi-unique", True),
        (3, 2, 3, "not r-chi-unique", False),
        (4, 3, 5, "not r-chi-unique", False),
        (4, 2, 5, "r-chi-unique", True),
    ])
    def test_sunflower_claim_labels(self, r, p, k, claim, expected):
        assert sunflower_claim(r, p, k) == (claim, expected)

    def test_family_claims_need_r_three(self):
        with pytest.raises(ValidationError):
            verify_family_claims(2, 6)

    @pytest.mark.slow
    def test_family_claims_seven_vertices(self):
        report = verify_family_claims(3, 7)
        assert report.count(Verdict.REFUTES) == 0
        by_family = {(o.family, o.claim): o.verdict for o in report.outcomes}
        assert by_family[("SH(7,2,3)", "not r-chi-unique")] == Verdict.CONFIRMS
        assert by_family[("C_3^3", "r-chi-unique")] == Verdict.CONFIRMS
        assert by_family[("C_3^3", "not chi-unique (general)")] == Verdict.CONFIRMS


def test_selfcheck_passes():
    report = run_selfcheck(n_max=5, samples=15, seed=3)
    assert report.passed, report.failures
    assert report.checks > 15
