"""The injectivity criteria, derived weights, weight search, and verdicts."""

from fractions import Fraction

import pytest

from conftest import p2
from corpus import field_pass_instances
from jacgate import (
    AnalysisConfig,
    Criterion,
    JacStatus,
    OutcomeKind,
    PolyMap,
    VerdictKind,
    Weight,
    check_assumptions,
    check_field_higher_part,
    check_h_higher_part,
    check_map_higher_part,
    derive_tilde_and_verify,
    h_norm,
    higher_part,
    higher_part_map,
    verdict,
    weight_search,
)
from jacgate.errors import PreconditionError


W11 = Weight((1, 1))


class TestAssumptions:
    def test_cubic_verified(self, cubic_map):
        assumptions = check_assumptions(cubic_map, box_radius=10.0)
        assert assumptions.f_zero_at_origin
        assert assumptions.jac_status is JacStatus.VERIFIED_ON_BOX

    def test_parabola_violation(self):
        assumptions = check_assumptions(PolyMap([p2("x^2 - 1"), p2("y")]))
        assert not assumptions.f_zero_at_origin
        assert assumptions.jac_status is JacStatus.VIOLATION_FOUND
        # det = 2x vanishes on the y-axis; the witness snaps exactly
        assert assumptions.jac_exact
        assert assumptions.jac_point[0] == 0

    def test_identity_trivial(self):
        assumptions = check_assumptions(PolyMap.identity(2))
        assert assumptions.f_zero_at_origin
        assert assumptions.jac_status is JacStatus.VERIFIED_ON_BOX


class TestMapCriterion:
    def test_cubic(self, cubic_map):
        result = check_map_higher_part(cubic_map, W11)
        assert result.succeeded

    def test_identity(self):
        assert check_map_higher_part(PolyMap.identity(2), W11).succeeded

    def test_shifted_cubic(self):
        result = check_map_higher_part(PolyMap([p2("x"), p2("x + y^3")]), W11)
        assert result.succeeded

    def test_zero_component_diagnostic(self):
        from jacgate.poly import Polynomial

        result = check_map_higher_part(PolyMap([p2("x"), Polynomial.zero(2)]), W11)
        assert not result.succeeded
        assert "zero" in result.diagnostic


class TestHNormCriterion:
    @pytest.mark.parametrize("s", [(1, 1), (1, 2), (2, 1)])
    def test_cubic_fails_everywhere(self, cubic_map, s):
        result = check_h_higher_part(cubic_map, Weight(s))
        assert result.outcome.kind is OutcomeKind.NONTRIVIAL_ZERO
        assert result.gradient_outcome.kind is OutcomeKind.NONTRIVIAL_ZERO

    def test_identity(self):
        result = check_h_higher_part(PolyMap.identity(2), W11)
        assert result.succeeded
        assert result.gradient_outcome.kind is OutcomeKind.ONLY_ORIGIN


class TestFieldCriterion:
    def test_identity(self):
        result = check_field_higher_part(PolyMap.identity(2), W11)
        assert result.succeeded
        assert result.block.r == 1

    def test_cubic_fails(self, cubic_map):
        result = check_field_higher_part(cubic_map, W11)
        assert result.outcome.kind is OutcomeKind.NONTRIVIAL_ZERO

    def test_h_success_implies_field_success_per_weight(self):
        # when the gradient of the top part misses zero off the origin, the
        # field's higher part is exactly that gradient
        for fmap, w in field_pass_instances(20, seed=19):
            h_result = check_h_higher_part(fmap, w)
            if not h_result.succeeded:
                continue
            field_result = check_field_higher_part(fmap, w)
            assert field_result.succeeded

    def test_field_can_succeed_where_h_fails(self):
        # the converse direction is weight-sensitive: with split block
        # degrees the field check can pass while the norm check fails
        fmap = PolyMap([p2("x^4 + 2*y"), p2("3*y^3")])
        h_result = check_h_higher_part(fmap, W11)
        assert h_result.outcome.kind is OutcomeKind.NONTRIVIAL_ZERO
        field_result = check_field_higher_part(fmap, W11)
        assert field_result.succeeded and field_result.block.r == 2


class TestDeriveTilde:
    def test_identity_keeps_weight(self):
        derived, result = derive_tilde_and_verify(PolyMap.identity(2), W11)
        assert derived == W11
        assert result.succeeded

    def test_cubic_refused(self, cubic_map):
        with pytest.raises(PreconditionError):
            derive_tilde_and_verify(cubic_map, W11)

    def test_split_blocks_verified(self):
        fmap = PolyMap([p2("x^4 + 2*y"), p2("3*y^3")])
        field_result = check_field_higher_part(fmap, W11)
        assert field_result.succeeded and field_result.block.r == 2
        derived, map_result = derive_tilde_and_verify(fmap, W11, field_result=field_result)
        assert derived == Weight((3, 4))
        assert map_result.succeeded

    def test_sandwich_holds_on_family(self):
        # exact squeeze at sample points for derived weights on the corpus
        from random import Random

        rng = Random(5)
        for fmap, w in field_pass_instances(10, seed=23):
            field_result = check_field_higher_part(fmap, w)
            if not field_result.succeeded:
                continue
            derived, _ = derive_tilde_and_verify(fmap, w, field_result=field_result)
            h_top = higher_part(h_norm(fmap), derived)
            f_top = higher_part_map(fmap, derived)
            for _ in range(20):
                x = tuple(Fraction(rng.randint(-9, 9), rng.randint(1, 9)) for _ in range(fmap.n))
                mid = h_top.evaluate(x)
                up = sum((c.evaluate(x) ** 2 for c in f_top.components), Fraction(0)) / 2
                assert 0 <= mid <= up


class TestWeightSearch:
    def test_cubic_map_criterion_first_weight(self, cubic_map):
        result = weight_search(cubic_map, [Criterion.MAP_HIGHER_PART], s_max=2)
        best = result.best[Criterion.MAP_HIGHER_PART]
        assert best is not None and best.weight == W11

    def test_cubic_h_criterion_no_success(self, cubic_map):
        result = weight_search(cubic_map, [Criterion.H_NORM_HIGHER_PART], s_max=2)
        assert result.best[Criterion.H_NORM_HIGHER_PART] is None
        assert len(result.attempts[Criterion.H_NORM_HIGHER_PART]) == 3

    def test_identity_all_criteria_first_weight(self):
        result = weight_search(PolyMap.identity(2), s_max=2)
        for criterion, best in result.best.items():
            assert best is not None and best.weight == W11

    def test_thread_env_does_not_change_results(self, cubic_map, monkeypatch):
        sequential = weight_search(cubic_map, [Criterion.MAP_HIGHER_PART], s_max=2)
        monkeypatch.setenv("JACGATE_THREADS", "2")
        threaded = weight_search(cubic_map, [Criterion.MAP_HIGHER_PART], s_max=2)
        seq_best = sequential.best[Criterion.MAP_HIGHER_PART]
        thr_best = threaded.best[Criterion.MAP_HIGHER_PART]
        assert seq_best.weight == thr_best.weight
        assert seq_best.outcome.kind is thr_best.outcome.kind


class TestVerdict:
    def test_cubic_injective(self, cubic_map):
        report = verdict(cubic_map)
        assert report.kind is VerdictKind.INJECTIVE
        assert report.by is Criterion.MAP_HIGHER_PART
        assert report.weight == W11
        assert report.witness is None

    def test_parabola_not_injective(self):
        report = verdict(PolyMap([p2("x^2 - 1"), p2("y")]))
        assert report.kind is VerdictKind.NOT_INJECTIVE
        assert report.witness is not None and report.witness.exact
        fmap = PolyMap([p2("x^2 - 1"), p2("y")])
        assert fmap.evaluate(report.witness.a) == fmap.evaluate(report.witness.b)

    def test_disqualified_criterion_names_hypothesis(self):
        # the map criterion fires for (x^3 - x, y) but det DF vanishes
        report = verdict(PolyMap([p2("x^3 - x"), p2("y")]))
        assert report.kind is VerdictKind.NOT_INJECTIVE
        assert "jac_nonvanishing" in report.conflict_note

    def test_unknown_when_search_capped(self):
        # this map needs weights (2, 1); capping the search at 1 leaves Unknown
        fmap = PolyMap([p2("x + y^2"), p2("y")])
        report = verdict(fmap, AnalysisConfig(s_max=1))
        assert report.kind is VerdictKind.UNKNOWN

    def test_succeeds_at_larger_cap(self):
        fmap = PolyMap([p2("x + y^2"), p2("y")])
        report = verdict(fmap, AnalysisConfig(s_max=2))
        assert report.kind is VerdictKind.INJECTIVE
        assert report.weight == Weight((2, 1))

    def test_properness_recorded_when_h_succeeds(self):
        report = verdict(PolyMap.identity(2))
        assert report.properness_weight == W11
