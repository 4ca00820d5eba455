"""Inverse probabilities of the observations given a hypothesized truth set.

Each source's provided values are partitioned, against the hypothesized
truths, into consistent / inconsistent / extra / missing categories; the
per-source likelihood is the product of the category probabilities.  All
accumulation happens in log domain: products of many small category
probabilities underflow double precision for realistic source counts.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Any, Iterable, Mapping, Sequence, Union

from .errors import UnknownSourceError
from .model import BOTTOM, ClaimSet, SourceQuality, _Bottom

Candidate = Union[Any, _Bottom]

LOG_ZERO = float("-inf")


@dataclass(frozen=True)
class CategoryCounts:
    consistent: int
    inconsistent: int
    extra: int
    missing: int


@dataclass(frozen=True)
class CategoryProbs:
    """Closed-form category probabilities for one source.

    p_consistent = R*A       (correct slot, true value)
    p_inconsistent = R*(1-A)/n  (correct slot, a particular false value)
    p_extra = Q/n            (phantom slot, a particular false value)
    p_missing = 1-R          (missed slot)
    p_no_extra = 1-Q         (credit for not inventing a slot)
    """

    p_consistent: float
    p_inconsistent: float
    p_extra: float
    p_missing: float
    p_no_extra: float


def category_probs(quality: SourceQuality, n: int) -> CategoryProbs:
    if n < 1:
        raise ValueError("false-domain size n must be >= 1")
    a, r, q = quality.accuracy, quality.recall, quality.false_positive_rate
    return CategoryProbs(
        p_consistent=r * a,
        p_inconsistent=r * (1.0 - a) / n,
        p_extra=q / n,
        p_missing=1.0 - r,
        p_no_extra=1.0 - q,
    )


def partition_counts(provided: Iterable[Any], selected: Sequence[Any],
                     candidate: Candidate) -> CategoryCounts:
    """Partition one source's provided values against the hypothesized
    truth set: `selected` plus `candidate`, or `selected` alone when the
    candidate is BOTTOM."""
    provided = frozenset(provided)
    truths = set(selected)
    if candidate is not BOTTOM:
        if candidate in truths:
            raise ValueError(f"candidate {candidate!r} already selected")
        truths.add(candidate)
    n_c = len(truths & provided)
    n_w = min(len(truths), len(provided)) - n_c
    n_e = max(len(provided) - len(truths), 0)
    n_m = max(len(truths) - len(provided), 0)
    return CategoryCounts(consistent=n_c, inconsistent=n_w, extra=n_e, missing=n_m)


def _xlogy(count: int, p: float) -> float:
    if count == 0:
        return 0.0
    if p <= 0.0:
        return LOG_ZERO
    return count * math.log(p)


def source_likelihood(provided: Iterable[Any], selected: Sequence[Any],
                      candidate: Candidate, probs: CategoryProbs) -> float:
    """Log-likelihood of one source's observations given the hypothesized
    truth set.  When the candidate is BOTTOM and the source did not
    overshoot the truth count, the source is additionally credited for not
    providing extra values."""
    provided = frozenset(provided)
    counts = partition_counts(provided, selected, candidate)
    ll = (_xlogy(counts.consistent, probs.p_consistent)
          + _xlogy(counts.inconsistent, probs.p_inconsistent)
          + _xlogy(counts.extra, probs.p_extra)
          + _xlogy(counts.missing, probs.p_missing))
    if candidate is BOTTOM and len(provided) <= len(selected):
        ll += _xlogy(1, probs.p_no_extra)
    return ll


def joint_likelihood(claims: ClaimSet, qualities: Mapping[Any, SourceQuality],
                     selected: Sequence[Any], candidate: Candidate, n: int) -> float:
    """Log-likelihood of all observations on one item, assuming source
    independence."""
    probs = {}
    for source in claims.per_source:
        if source not in qualities:
            raise UnknownSourceError(f"unknown source {source!r}: no quality entry")
        probs[source] = category_probs(qualities[source], n)
    total = 0.0
    for source, provided in claims.per_source.items():
        ll = source_likelihood(provided, selected, candidate, probs[source])
        if ll == LOG_ZERO:
            return LOG_ZERO
        total += ll
    return total
