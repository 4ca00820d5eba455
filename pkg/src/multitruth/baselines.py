"""Comparison fusion methods: majority vote, accuracy-weighted single
truth, independent per-value precision/recall odds, and the two-step
count-then-pick baseline.
"""

from __future__ import annotations

import logging
from typing import Any, Mapping

from .model import (
    ClaimSet,
    FusionDiagnostics,
    FusionResult,
    PriorConfig,
    SourceQuality,
)

log = logging.getLogger(__name__)

_CLAMP = 1e-6


def majority_vote(claims: ClaimSet) -> FusionResult:
    """Single truth = the value with the most providers; the reported
    per-value numbers are provider counts scaled by the winner's count
    (diagnostic only, not calibrated probabilities)."""
    if not claims.candidates:
        raise ValueError(f"item {claims.item_id!r} has no candidate value")
    counts = {v: len(claims.providers[v]) for v in claims.candidates}
    top = max(counts.values())
    winners = sorted((v for v, c in counts.items() if c == top), key=str)
    diag = FusionDiagnostics(method="majority")
    if len(winners) > 1:
        diag.notes.append(f"tie among {winners}; selected {winners[0]!r} lexicographically")
        log.debug("majority tie on item %r: %s", claims.item_id, winners)
    return FusionResult(
        item_id=claims.item_id,
        probabilities={v: c / top for v, c in counts.items()},
        selected_truths=[winners[0]],
        diagnostics=diag,
    )


def _accuracy_votes(claims: ClaimSet, qualities: Mapping[Any, SourceQuality], n: int):
    votes = {}
    for v in claims.candidates:
        total = 1.0
        for s in claims.providers.get(v, ()):
            a = min(max(qualities[s].accuracy, _CLAMP), 1.0 - _CLAMP)
            total *= n * a / (1.0 - a)
        votes[v] = total
    return votes


def accu_fuse(claims: ClaimSet, qualities: Mapping[Any, SourceQuality], n: int) -> FusionResult:
    """Single-truth fusion: normalize accuracy vote counts over all
    provided values; exactly one truth is selected."""
    if not claims.candidates:
        raise ValueError(f"item {claims.item_id!r} has no candidate value")
    votes = _accuracy_votes(claims, qualities, n)
    total = sum(votes.values())
    probabilities = {v: l / total for v, l in votes.items()}
    ranked = sorted(probabilities, key=lambda v: (-probabilities[v], str(v)))
    diag = FusionDiagnostics(method="accu")
    top_p = probabilities[ranked[0]]
    ties = [v for v in ranked if probabilities[v] == top_p]
    if len(ties) > 1:
        diag.notes.append(f"tie among {ties}; selected {ranked[0]!r} lexicographically")
    return FusionResult(item_id=claims.item_id, probabilities=probabilities,
                        selected_truths=[ranked[0]], diagnostics=diag)


def precrec_fuse(claims: ClaimSet, qualities: Mapping[Any, SourceQuality],
                 prior: PriorConfig) -> FusionResult:
    """Independent per-value decision from posterior odds: providers
    contribute R/Q, item sources that abstain contribute (1-R)/(1-Q);
    a value is true when its probability clears 0.5."""
    if not claims.candidates:
        raise ValueError(f"item {claims.item_id!r} has no candidate value")
    alpha = prior.alpha
    probabilities = {}
    for v in claims.candidates:
        odds = alpha / (1.0 - alpha)
        providers = claims.providers.get(v, frozenset())
        for s in claims.per_source:
            q = qualities[s]
            r = min(max(q.recall, _CLAMP), 1.0 - _CLAMP)
            fp = min(max(q.false_positive_rate, _CLAMP), 1.0 - _CLAMP)
            if s in providers:
                odds *= r / fp
            else:
                odds *= (1.0 - r) / (1.0 - fp)
        probabilities[v] = odds / (1.0 + odds)
    selected = sorted((v for v, p in probabilities.items() if p > 0.5),
                      key=lambda v: (-probabilities[v], str(v)))
    return FusionResult(item_id=claims.item_id, probabilities=probabilities,
                        selected_truths=selected,
                        diagnostics=FusionDiagnostics(method="precrec"))


def twostep_fuse(claims: ClaimSet, qualities: Mapping[Any, SourceQuality],
                 prior: PriorConfig) -> FusionResult:
    """First decide the number of truths k by single-truth fusion over the
    per-source value counts, then select the k values ranked highest by
    single-truth fusion over the real values."""
    if not claims.candidates:
        raise ValueError(f"item {claims.item_id!r} has no candidate value")
    cardinalities = ClaimSet.from_claims(
        (claims.item_id, "#truths"),
        {s: [len(vs)] for s, vs in claims.per_source.items()})
    n_card = max(len(vs) for vs in claims.per_source.values())
    card_result = accu_fuse(cardinalities, qualities, n_card)
    top_p = max(card_result.probabilities.values())
    tied = sorted(k for k, p in card_result.probabilities.items()
                  if p == top_p)
    k = tied[0]
    diag = FusionDiagnostics(method="twostep")
    if len(tied) > 1:
        diag.notes.append(f"truth-count tie among {tied}; selected smallest k={k}")
    value_result = accu_fuse(claims, qualities, prior.n)
    ranked = sorted(value_result.probabilities,
                    key=lambda v: (-value_result.probabilities[v], str(v)))
    return FusionResult(item_id=claims.item_id,
                        probabilities=value_result.probabilities,
                        selected_truths=ranked[:k], diagnostics=diag)
