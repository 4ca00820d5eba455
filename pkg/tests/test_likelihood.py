"""Category partition and observation likelihoods, checked against
independent brute-force oracles."""

import math

import pytest
from hypothesis import given, strategies as st

from multitruth import (
    BOTTOM,
    ClaimSet,
    SourceQuality,
    UnknownSourceError,
    category_probs,
    joint_likelihood,
    partition_counts,
    source_likelihood,
)
from multitruth.likelihood import LOG_ZERO

Q_STD = SourceQuality(accuracy=0.6, recall=0.9, false_positive_rate=0.1, precision=0.9)


class TestCategoryProbs:
    def test_closed_forms(self):
        p = category_probs(Q_STD, 10)
        assert p.p_consistent == pytest.approx(0.54)
        assert p.p_inconsistent == pytest.approx(0.036)
        assert p.p_extra == pytest.approx(0.01)
        assert p.p_missing == pytest.approx(0.1)
        assert p.p_no_extra == pytest.approx(0.9)

    def test_n_validated(self):
        with pytest.raises(ValueError):
            category_probs(Q_STD, 0)


class TestPartitionCounts:
    def test_worked_partition(self):
        # provided {stick, boots} against truths {helmet, stick}: one
        # consistent, one inconsistent
        c = partition_counts({"stick", "boots"}, ["helmet"], "stick")
        assert (c.consistent, c.inconsistent, c.extra, c.missing) == (1, 1, 0, 0)

    def test_extra_and_missing(self):
        c = partition_counts({"a", "b", "c"}, [], "a")
        assert (c.consistent, c.inconsistent, c.extra, c.missing) == (1, 0, 2, 0)
        c = partition_counts({"a"}, ["b", "c"], "d")
        assert (c.consistent, c.inconsistent, c.extra, c.missing) == (0, 1, 0, 2)

    def test_bottom_excludes_candidate_slot(self):
        c = partition_counts({"a", "b"}, ["a"], BOTTOM)
        assert (c.consistent, c.inconsistent, c.extra, c.missing) == (1, 0, 1, 0)

    def test_candidate_already_selected_rejected(self):
        with pytest.raises(ValueError, match="already selected"):
            partition_counts({"a"}, ["a"], "a")

    @given(
        provided=st.sets(st.integers(0, 9), min_size=1, max_size=8),
        selected=st.sets(st.integers(10, 19), max_size=5),
        use_bottom=st.booleans(),
    )
    def test_count_identities(self, provided, selected, use_bottom):
        candidate = BOTTOM if use_bottom else 99
        c = partition_counts(provided, sorted(selected), candidate)
        n_truths = len(selected) + (0 if use_bottom else 1)
        # provided values split into consistent + inconsistent + extra
        assert c.consistent + c.inconsistent + c.extra == len(provided)
        # truth slots split into covered (consistent + inconsistent) + missing
        assert c.consistent + c.inconsistent + c.missing == n_truths
        assert min(c.extra, c.missing) == 0


class TestSourceLikelihood:
    def test_matches_product_oracle(self):
        probs = category_probs(Q_STD, 10)
        ll = source_likelihood({"stick", "boots"}, ["helmet"], "stick", probs)
        assert math.exp(ll) == pytest.approx(0.54 * 0.036)

    def test_bottom_awards_no_extra_credit(self):
        probs = category_probs(Q_STD, 10)
        # one provided value, one selected truth: source did not overshoot
        ll = source_likelihood({"a"}, ["a"], BOTTOM, probs)
        assert math.exp(ll) == pytest.approx(0.54 * 0.9)
        # two provided values against one truth: overshoot, no credit
        ll = source_likelihood({"a", "b"}, ["a"], BOTTOM, probs)
        assert math.exp(ll) == pytest.approx(0.54 * 0.01)

    def test_zero_probability_short_circuits(self):
        q = SourceQuality(accuracy=0.6, recall=1.0, false_positive_rate=0.1)
        probs = category_probs(q, 10)  # p_missing = 0
        ll = source_likelihood({"a"}, ["a", "b"], "c", probs)
        assert ll == LOG_ZERO


class TestJointLikelihood:
    def test_worked_joint(self, hockey_claims, hockey_qualities):
        # p(observations | first truth helmet, next stick)
        ll = joint_likelihood(hockey_claims, hockey_qualities, ["helmet"], "stick", 10)
        assert math.exp(ll) == pytest.approx(0.2916 * 0.01944 * 0.01944, rel=1e-9)

    def test_worked_joint_bottom(self, hockey_claims, hockey_qualities):
        ll = joint_likelihood(hockey_claims, hockey_qualities, ["helmet"], BOTTOM, 10)
        assert math.exp(ll) == pytest.approx(1.0498e-8, rel=1e-3)

    def test_unknown_source_rejected(self, hockey_claims):
        with pytest.raises(UnknownSourceError, match="s2"):
            joint_likelihood(hockey_claims, {"s1": Q_STD, "s3": Q_STD},
                             [], "helmet", 10)

    def test_source_independence(self, hockey_claims, hockey_qualities):
        probs = category_probs(Q_STD, 10)
        expected = sum(
            source_likelihood(vs, ["helmet"], "stick", probs)
            for vs in hockey_claims.per_source.values())
        got = joint_likelihood(hockey_claims, hockey_qualities, ["helmet"], "stick", 10)
        assert got == pytest.approx(expected)
