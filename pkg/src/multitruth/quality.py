"""Source-quality estimation from probabilistic fusion output, and the
alternating fusion / quality-update loop.

Precision and recall compare the *number* of values a source provides
against the probabilistic truth mass of each item; accuracy compares the
probabilities of the source's own values against its precision.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass
from typing import Any, Callable, Dict, List, Mapping, Optional, Tuple

from .model import ClaimSet, FusionResult, PriorConfig, SourceQuality, derive_q

log = logging.getLogger(__name__)

FusionBackend = Callable[[ClaimSet, Mapping[Any, SourceQuality], PriorConfig], FusionResult]


def _items_of(source: Any, dataset: Mapping[Any, ClaimSet]) -> List[Any]:
    return [item for item, cs in dataset.items() if source in cs.per_source]


def _truth_mass(result: FusionResult) -> float:
    return sum(result.probabilities.values())


def update_precision(source: Any, dataset: Mapping[Any, ClaimSet],
                     results: Mapping[Any, FusionResult]) -> float:
    """Average, over the items the source covers, of (item truth mass /
    number of provided values), capped at 1."""
    items = _items_of(source, dataset)
    if not items:
        raise ValueError(f"source {source!r} provides no item")
    per_item = [min(_truth_mass(results[d]) / len(dataset[d].per_source[source]), 1.0)
                for d in items]
    return sum(per_item) / len(per_item)


def update_recall(source: Any, dataset: Mapping[Any, ClaimSet],
                  results: Mapping[Any, FusionResult]) -> float:
    """Average, over covered items, of (number of provided values / item
    truth mass), capped at 1.  Items with no truth mass count as recall 1:
    the source cannot miss truths that do not exist."""
    items = _items_of(source, dataset)
    if not items:
        raise ValueError(f"source {source!r} provides no item")
    per_item = []
    for d in items:
        mass = _truth_mass(results[d])
        per_item.append(1.0 if mass <= 0 else min(len(dataset[d].per_source[source]) / mass, 1.0))
    return sum(per_item) / len(per_item)


def update_accuracy(source: Any, dataset: Mapping[Any, ClaimSet],
                    results: Mapping[Any, FusionResult],
                    mode: str = "per-item") -> float:
    """Average probability of the source's values, discounted by its
    precision so only values for real truth slots count.

    "per-item" divides by the item-level precision before averaging;
    "literal" divides the global value average by the global precision.
    """
    items = _items_of(source, dataset)
    if not items:
        raise ValueError(f"source {source!r} provides no item")
    if mode == "per-item":
        per_item = []
        for d in items:
            values = dataset[d].per_source[source]
            avg_p = sum(results[d].probabilities.get(v, 0.0) for v in values) / len(values)
            prec = min(_truth_mass(results[d]) / len(values), 1.0)
            if prec <= 0:
                raise ValueError(f"accuracy undefined for zero-precision source {source!r}")
            per_item.append(min(avg_p / prec, 1.0))
        return sum(per_item) / len(per_item)
    if mode == "literal":
        probs = [results[d].probabilities.get(v, 0.0)
                 for d in items for v in dataset[d].per_source[source]]
        prec = update_precision(source, dataset, results)
        if prec <= 0:
            raise ValueError(f"accuracy undefined for zero-precision source {source!r}")
        return min((sum(probs) / len(probs)) / prec, 1.0)
    raise ValueError(f"unknown accuracy mode {mode!r}")


def is_good_source(quality: SourceQuality, n: int) -> bool:
    """A source is worth listening to when raising its accuracy raises the
    probability of its values, providing more values argues against
    stopping, and providing fewer argues for stopping."""
    a, r, q = quality.accuracy, quality.recall, quality.false_positive_rate
    if not a > 1.0 / (n + 1):
        return False
    if not q < (r - r * a) / (1.0 - r * a):
        return False
    if not r > q / (1.0 - a + a * q):
        return False
    return True


@dataclass(frozen=True)
class IterationConfig:
    init_quality: SourceQuality = SourceQuality(
        accuracy=0.8, recall=0.8, false_positive_rate=0.2, precision=0.8)
    max_iterations: int = 5
    tolerance: float = 1e-4
    accuracy_mode: str = "per-item"
    filter_good: bool = True
    # Precision, recall, and the false-positive rate are estimated from an
    # item's probabilistic truth mass.  Backends that normalize each item's
    # probabilities to a single truth pin that mass to 1, so the estimates
    # carry no information; turn this off to keep the initial values and
    # re-estimate accuracy only.
    update_slot_metrics: bool = True


@dataclass
class IterationRecord:
    iteration: int
    source: Any
    precision: float
    recall: float
    accuracy: float
    false_positive_rate: float
    good: bool


def _fuse_all(dataset: Mapping[Any, ClaimSet], qualities: Mapping[Any, SourceQuality],
              prior: PriorConfig, fusion: FusionBackend, active: Optional[set],
              threads: Optional[int] = None) -> Dict[Any, FusionResult]:
    items = sorted(dataset, key=str)

    def one(item):
        cs = dataset[item]
        if active is not None:
            cs = cs.restrict(active)
        return fusion(cs, qualities, prior)

    if threads is None or threads <= 1:
        return {item: one(item) for item in items}
    from concurrent.futures import ThreadPoolExecutor
    with ThreadPoolExecutor(max_workers=threads) as pool:
        fused = list(pool.map(one, items))
    return dict(zip(items, fused))


def iterate(dataset: Mapping[Any, ClaimSet], prior: PriorConfig,
            fusion: FusionBackend, config: IterationConfig = IterationConfig(),
            threads: Optional[int] = None,
            ) -> Tuple[Dict[Any, FusionResult], Dict[Any, SourceQuality], List[IterationRecord]]:
    """Alternate fusing every item with the current qualities and
    re-estimating every source's quality from the fused probabilities.

    Sources failing the good-source test are excluded from the next
    fusion round (their values stay candidates) but are re-tested every
    iteration.  Stops at `max_iterations` or when no quality moves more
    than the tolerance.  With max_iterations=0 this is a single fusion
    pass at the initial qualities.
    """
    if not dataset:
        raise ValueError("empty dataset")
    sources = sorted({s for cs in dataset.values() for s in cs.per_source}, key=str)
    qualities: Dict[Any, SourceQuality] = {s: config.init_quality for s in sources}
    records: List[IterationRecord] = []

    active: Optional[set] = None
    results = _fuse_all(dataset, qualities, prior, fusion, active, threads)
    for it in range(1, config.max_iterations + 1):
        new_qualities: Dict[Any, SourceQuality] = {}
        delta = 0.0
        good_sources = set()
        for s in sources:
            a = update_accuracy(s, dataset, results, mode=config.accuracy_mode)
            if config.update_slot_metrics:
                p = update_precision(s, dataset, results)
                r = update_recall(s, dataset, results)
                q = derive_q(max(p, 1e-12), r, prior.alpha)
            else:
                old = qualities[s]
                p, r, q = old.precision, old.recall, old.false_positive_rate
            nq = SourceQuality(accuracy=a, recall=r, false_positive_rate=q, precision=p)
            old = qualities[s]
            delta = max(delta, abs(p - old.precision), abs(r - old.recall),
                        abs(a - old.accuracy), abs(q - old.false_positive_rate))
            good = is_good_source(nq.clamped(), prior.n)
            records.append(IterationRecord(iteration=it, source=s, precision=p,
                                           recall=r, accuracy=a,
                                           false_positive_rate=q, good=good))
            if good:
                good_sources.add(s)
            new_qualities[s] = nq
        qualities = new_qualities
        if config.filter_good:
            if good_sources:
                active = good_sources
            else:
                log.warning("no source passes the good-source test at iteration %d; "
                            "fusing with all sources", it)
                active = None
        results = _fuse_all(dataset, qualities, prior, fusion, active, threads)
        if delta < config.tolerance:
            log.debug("quality iteration converged at step %d (delta %.2g)", it, delta)
            break
    return results, qualities, records
