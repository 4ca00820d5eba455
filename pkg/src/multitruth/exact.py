"""Exact fusion by enumerating possible worlds.

A possible world is an ordered sequence of values already committed as
truths; the probability of a value is the weighted sum, over all worlds
not containing it, of its conditional probability of being the next truth.
Exponential in the candidate count, so guarded by a cap; serves as the
oracle for the quadratic approximation.
"""

from __future__ import annotations

import math
from typing import Any, Dict, FrozenSet, Mapping, Sequence

from .errors import DegenerateEvidenceError, InstanceTooLargeError, UnknownSourceError
from .likelihood import LOG_ZERO, category_probs, source_likelihood
from .model import (
    BOTTOM,
    ClaimSet,
    FusionDiagnostics,
    FusionResult,
    PriorConfig,
    SourceQuality,
    VoteCountFixture,
    beta_at,
    prior_slot_count,
)

DEFAULT_CANDIDATE_CAP = 8

# Worlds whose cumulative probability falls below this contribute nothing
# at the supported tolerances; skipping them bounds work.
PRUNE_THRESHOLD = 1e-12


def conditional_distribution(claims: ClaimSet, qualities: Mapping[Any, SourceQuality],
                             prior: PriorConfig, selected: Sequence[Any],
                             prior_mode: str = "literal") -> Dict[Any, float]:
    """Bayes-normalized probabilities, over the unselected candidates plus
    BOTTOM, of being the next truth after `selected`."""
    probs = {s: category_probs(q, prior.n) for s, q in qualities.items()}
    return _conditional_distribution(claims, probs, prior, frozenset(selected),
                                     len(selected), prior_mode)


def _conditional_distribution(claims: ClaimSet, source_probs, prior: PriorConfig,
                              selected: FrozenSet[Any], n_selected: int,
                              prior_mode: str) -> Dict[Any, float]:
    remaining = sorted(claims.candidates - selected, key=str)
    i = n_selected + 1
    beta = beta_at(prior, i)
    v_prior = ((1.0 - beta) / prior_slot_count(len(claims.candidates), i, prior_mode)
               if remaining else 0.0)
    selected_seq = tuple(selected)

    def joint_ll(candidate) -> float:
        total = 0.0
        for source, provided in claims.per_source.items():
            ll = source_likelihood(provided, selected_seq, candidate, source_probs[source])
            if ll == LOG_ZERO:
                return LOG_ZERO
            total += ll
        return total

    log_weights: Dict[Any, float] = {}
    for v in remaining:
        ll = joint_ll(v)
        log_weights[v] = LOG_ZERO if ll == LOG_ZERO or v_prior <= 0 else ll + math.log(v_prior)
    ll_bot = joint_ll(BOTTOM)
    log_weights[BOTTOM] = LOG_ZERO if ll_bot == LOG_ZERO or beta <= 0 else ll_bot + math.log(beta)

    top = max(log_weights.values())
    if top == LOG_ZERO:
        raise DegenerateEvidenceError(
            f"degenerate evidence on item {claims.item_id!r}: all likelihoods are zero")
    total = sum(math.exp(lw - top) for lw in log_weights.values())
    return {c: math.exp(lw - top) / total if lw != LOG_ZERO else 0.0
            for c, lw in log_weights.items()}


def conditional_prob(claims: ClaimSet, qualities: Mapping[Any, SourceQuality],
                     prior: PriorConfig, selected: Sequence[Any], candidate,
                     prior_mode: str = "literal") -> float:
    """Probability of `candidate` (a value or BOTTOM) being the next truth
    given the already-selected sequence."""
    if candidate is not BOTTOM and candidate in set(selected):
        raise ValueError(f"candidate {candidate!r} already selected")
    dist = conditional_distribution(claims, qualities, prior, selected, prior_mode)
    return dist[candidate]


def _enumerate(candidates, conds_for, prune: float) -> Dict[Any, float]:
    """Depth-first sum over all selection sequences.  `conds_for` maps a
    frozenset of already-selected values to the conditional distribution
    over the remaining candidates plus BOTTOM."""
    totals = {v: 0.0 for v in candidates}
    all_values = frozenset(candidates)

    def walk(selected: FrozenSet[Any], world_p: float) -> None:
        cond = conds_for(selected)
        for v in all_values - selected:
            branch = world_p * cond[v]
            totals[v] += branch
            if branch > prune and len(selected) + 1 < len(all_values):
                walk(selected | {v}, branch)
        # the BOTTOM branch terminates the world and contributes nothing

    walk(frozenset(), 1.0)
    return totals


def _select(probabilities: Dict[Any, float]):
    chosen = [v for v, p in probabilities.items() if p > 0.5]
    return sorted(chosen, key=lambda v: (-probabilities[v], str(v)))


def exact_fuse(claims: ClaimSet, qualities: Mapping[Any, SourceQuality],
               prior: PriorConfig, max_candidates: int = DEFAULT_CANDIDATE_CAP,
               prior_mode: str = "literal", prune: float = PRUNE_THRESHOLD) -> FusionResult:
    """Exact per-value truth probabilities by full possible-world
    enumeration; values with probability above 0.5 are selected."""
    if len(claims.candidates) > max_candidates:
        raise InstanceTooLargeError(
            f"instance too large for exact enumeration ({len(claims.candidates)} candidates "
            f"> cap {max_candidates}); use the approximation")
    source_probs = {s: category_probs(q, prior.n) for s, q in qualities.items()}
    for source in claims.per_source:
        if source not in source_probs:
            raise UnknownSourceError(f"unknown source {source!r}: no quality entry")
    cache: Dict[FrozenSet[Any], Dict[Any, float]] = {}

    def conds_for(selected: FrozenSet[Any]) -> Dict[Any, float]:
        if selected not in cache:
            cache[selected] = _conditional_distribution(
                claims, source_probs, prior, selected, len(selected), prior_mode)
        return cache[selected]

    probabilities = _enumerate(sorted(claims.candidates, key=str), conds_for, prune)
    return FusionResult(
        item_id=claims.item_id,
        probabilities=probabilities,
        selected_truths=_select(probabilities),
        diagnostics=FusionDiagnostics(method="hybrid-exact"),
    )


def exact_fuse_from_votes(fixture: VoteCountFixture, item_id: Any = None,
                          prune: float = PRUNE_THRESHOLD) -> FusionResult:
    """Exact enumeration with conditionals taken from injected vote
    counts: p(v | selected) = L(v) / (sum of unselected L + stop vote)."""
    values = sorted(fixture.votes, key=str)
    votes = dict(fixture.votes)

    def conds_for(selected: FrozenSet[Any]) -> Dict[Any, float]:
        remaining = [v for v in values if v not in selected]
        bot = fixture.bot_at(len(selected) + 1)
        denom = sum(votes[v] for v in remaining) + bot
        if denom <= 0:
            raise DegenerateEvidenceError("degenerate votes: zero denominator")
        cond = {v: votes[v] / denom for v in remaining}
        cond[BOTTOM] = bot / denom
        return cond

    probabilities = _enumerate(values, conds_for, prune)
    return FusionResult(
        item_id=item_id,
        probabilities=probabilities,
        selected_truths=_select(probabilities),
        diagnostics=FusionDiagnostics(method="hybrid-exact-votes"),
    )
