"""Comparison methods: majority vote, accuracy-weighted single truth,
independent per-value odds, and count-then-pick."""

import pytest
from hypothesis import given, strategies as st

from multitruth import (
    ClaimSet,
    PriorConfig,
    SourceQuality,
    accu_fuse,
    majority_vote,
    precrec_fuse,
    twostep_fuse,
)

Q6 = SourceQuality(accuracy=0.6, recall=0.5, false_positive_rate=0.1, precision=0.6)


class TestMajority:
    def test_winner_by_provider_count(self, hockey_claims):
        r = majority_vote(hockey_claims)
        # helmet and stick tie at 2 providers; lexicographic winner
        assert r.selected_truths == ["helmet"]
        assert r.probabilities["helmet"] == 1.0
        assert r.probabilities["boots"] == 0.5
        assert any("tie" in n for n in r.diagnostics.notes)

    def test_clear_winner(self):
        cs = ClaimSet.from_claims("d", {"s1": ["a"], "s2": ["a"], "s3": ["b"]})
        assert majority_vote(cs).selected_truths == ["a"]

    def test_empty_rejected(self):
        cs = ClaimSet(item_id="d", per_source={}, candidates=frozenset(), providers={})
        with pytest.raises(ValueError):
            majority_vote(cs)


class TestAccu:
    def test_running_example(self, hockey_claims):
        q = {s: SourceQuality(accuracy=0.6, recall=0.5, false_positive_rate=0.1)
             for s in hockey_claims.per_source}
        r = accu_fuse(hockey_claims, q, n=10)
        assert r.probabilities["helmet"] == pytest.approx(0.47, abs=0.005)
        assert r.probabilities["stick"] == pytest.approx(0.47, abs=0.005)
        assert r.probabilities["boots"] == pytest.approx(0.03, abs=0.005)
        assert r.probabilities["skis"] == pytest.approx(0.03, abs=0.005)
        assert sum(r.probabilities.values()) == pytest.approx(1.0)
        assert r.selected_truths == ["helmet"]

    def test_higher_accuracy_wins(self):
        cs = ClaimSet.from_claims("d", {"s1": ["a"], "s2": ["b"]})
        q = {"s1": SourceQuality(accuracy=0.9, recall=0.5, false_positive_rate=0.1),
             "s2": SourceQuality(accuracy=0.6, recall=0.5, false_positive_rate=0.1)}
        assert accu_fuse(cs, q, n=10).selected_truths == ["a"]

    def test_extreme_accuracy_clamped(self):
        cs = ClaimSet.from_claims("d", {"s1": ["a"]})
        q = {"s1": SourceQuality(accuracy=1.0, recall=0.5, false_positive_rate=0.1)}
        r = accu_fuse(cs, q, n=10)
        assert r.probabilities["a"] == pytest.approx(1.0)


class TestPrecRec:
    def _prior(self):
        return PriorConfig(n=10, alpha=0.25)

    def test_per_value_independence(self, hockey_claims):
        """The decision on one value ignores who provides the others."""
        q = {s: Q6 for s in hockey_claims.per_source}
        full = precrec_fuse(hockey_claims, q, self._prior())
        reduced = ClaimSet.from_claims("d", {
            "s1": {"helmet", "x1"}, "s2": {"x2", "x3"}, "s3": {"helmet", "x4"}})
        again = precrec_fuse(reduced, q, self._prior())
        assert again.probabilities["helmet"] == pytest.approx(
            full.probabilities["helmet"])

    def test_providers_raise_probability(self, hockey_claims):
        q = {s: Q6 for s in hockey_claims.per_source}
        r = precrec_fuse(hockey_claims, q, self._prior())
        assert r.probabilities["helmet"] > r.probabilities["boots"]

    def test_selection_threshold(self):
        cs = ClaimSet.from_claims("d", {"s1": ["a"], "s2": ["a"], "s3": ["a"]})
        q = {s: Q6 for s in cs.per_source}
        r = precrec_fuse(cs, q, self._prior())
        assert r.probabilities["a"] > 0.5
        assert r.selected_truths == ["a"]

    def test_probabilities_in_unit_interval(self, hockey_claims):
        q = {s: Q6 for s in hockey_claims.per_source}
        r = precrec_fuse(hockey_claims, q, self._prior())
        assert all(0.0 < p < 1.0 for p in r.probabilities.values())


class TestTwoStep:
    def _prior(self):
        return PriorConfig(n=10, alpha=0.25)

    def test_selects_k_top_values(self, hockey_claims):
        q = {s: SourceQuality(accuracy=0.7, recall=0.7, false_positive_rate=0.1)
             for s in hockey_claims.per_source}
        r = twostep_fuse(hockey_claims, q, self._prior())
        # every source provides 2 values, so k=2; the two double-provided
        # values rank highest
        assert r.selected_truths == ["helmet", "stick"]

    def test_smallest_k_on_tie(self):
        cs = ClaimSet.from_claims("d", {"s1": ["a"], "s2": ["a", "b"]})
        q = {s: SourceQuality(accuracy=0.7, recall=0.7, false_positive_rate=0.1)
             for s in cs.per_source}
        r = twostep_fuse(cs, q, self._prior())
        assert len(r.selected_truths) == 1
        assert any("tie" in n for n in r.diagnostics.notes)

    def test_unanimous_cardinality(self):
        cs = ClaimSet.from_claims("d", {"s1": ["a", "b", "c"], "s2": ["a", "b", "d"]})
        q = {s: SourceQuality(accuracy=0.7, recall=0.7, false_positive_rate=0.1)
             for s in cs.per_source}
        r = twostep_fuse(cs, q, self._prior())
        assert len(r.selected_truths) == 3
        assert set(r.selected_truths) >= {"a", "b"}
