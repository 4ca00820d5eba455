"""File formats: claims and gold CSV/JSONL ingestion, probability and
report emission.  Floating-point output uses 6 significant digits so
reruns are byte-identical.
"""

from __future__ import annotations

import csv
import json
import logging
from dataclasses import dataclass
from pathlib import Path
from typing import Any, Dict, Iterable, List, Mapping, Optional, Tuple

from .errors import ParseError
from .model import (
    Claim,
    ClaimSet,
    FusionResult,
    GoldStandard,
    SourceQuality,
    claims_by_item,
    normalize_value,
)

log = logging.getLogger(__name__)

CLAIM_COLUMNS = ("source_id", "item_id", "value")


@dataclass
class LoadReport:
    n_rows: int
    n_claims: int
    n_duplicates: int


def _detect_format(path: Path, fmt: Optional[str]) -> str:
    if fmt:
        return fmt
    suffix = path.suffix.lower()
    if suffix == ".csv":
        return "csv"
    if suffix in (".jsonl", ".json", ".ndjson"):
        return "jsonl"
    raise ParseError(f"cannot infer claims format from {path.name!r}; pass format explicitly")


def _iter_claim_rows(path: Path, fmt: str):
    if fmt == "csv":
        with path.open(newline="") as fh:
            reader = csv.DictReader(fh)
            if reader.fieldnames is None:
                raise ParseError(f"empty claims file {path}")
            missing = set(CLAIM_COLUMNS) - set(reader.fieldnames)
            if missing:
                raise ParseError(f"claims file {path} lacks columns {sorted(missing)}", line=1)
            for row in reader:
                line = reader.line_num
                if any(row.get(c) in (None, "") for c in CLAIM_COLUMNS):
                    raise ParseError(f"malformed claims row in {path}", line=line)
                yield line, row["source_id"], row["item_id"], row["value"]
    elif fmt == "jsonl":
        with path.open() as fh:
            for line_no, raw in enumerate(fh, start=1):
                raw = raw.strip()
                if not raw:
                    continue
                try:
                    obj = json.loads(raw)
                except json.JSONDecodeError as exc:
                    raise ParseError(f"invalid JSON in {path}: {exc.msg}", line=line_no) from exc
                try:
                    yield line_no, obj["source"], obj["item"], obj["value"]
                except (TypeError, KeyError):
                    raise ParseError(f"claims object needs source/item/value keys in {path}",
                                     line=line_no) from None
    else:
        raise ParseError(f"unknown claims format {fmt!r}")


def load_claims(path, fmt: Optional[str] = None) -> Tuple[Dict[Any, ClaimSet], LoadReport]:
    """Read claims grouped into per-item ClaimSets; duplicate triples are
    collapsed and counted in the report."""
    path = Path(path)
    fmt = _detect_format(path, fmt)
    seen = set()
    claims: List[Claim] = []
    n_rows = 0
    n_dup = 0
    for _, source, item, value in _iter_claim_rows(path, fmt):
        n_rows += 1
        triple = (source, item, normalize_value(value))
        if triple in seen:
            n_dup += 1
            continue
        seen.add(triple)
        claims.append(Claim(source_id=source, item_id=item, value=triple[2]))
    if not claims:
        raise ParseError(f"no claims found in {path}")
    report = LoadReport(n_rows=n_rows, n_claims=len(claims), n_duplicates=n_dup)
    if n_dup:
        log.info("deduplicated %d repeated claim rows in %s", n_dup, path)
    return claims_by_item(claims), report


def load_gold(path) -> GoldStandard:
    """Read a gold standard CSV (`item_id,value`, one row per true value)."""
    path = Path(path)
    truths: Dict[Any, set] = {}
    with path.open(newline="") as fh:
        reader = csv.DictReader(fh)
        if reader.fieldnames is None:
            raise ParseError(f"empty gold file {path}")
        missing = {"item_id", "value"} - set(reader.fieldnames)
        if missing:
            raise ParseError(f"gold file {path} lacks columns {sorted(missing)}", line=1)
        for row in reader:
            if row.get("item_id") in (None, "") or row.get("value") in (None, ""):
                raise ParseError(f"malformed gold row in {path}", line=reader.line_num)
            truths.setdefault(row["item_id"], set()).add(normalize_value(row["value"]))
    if not truths:
        raise ParseError(f"no gold values found in {path}")
    return GoldStandard(truths=truths)


def _fmt(x: float) -> str:
    return format(x, ".6g")


def write_probabilities(results: Mapping[Any, FusionResult], path) -> None:
    path = Path(path)
    with path.open("w", newline="") as fh:
        writer = csv.writer(fh)
        writer.writerow(["item_id", "value", "probability", "selected"])
        for item in sorted(results, key=str):
            r = results[item]
            chosen = set(r.selected_truths)
            for value in sorted(r.probabilities, key=str):
                writer.writerow([item, value, _fmt(r.probabilities[value]),
                                 "true" if value in chosen else "false"])


def write_run_summary(path, method: str, iterations: int,
                      qualities: Mapping[Any, SourceQuality],
                      report: Optional[LoadReport] = None) -> None:
    payload = {
        "method": method,
        "iterations": iterations,
        "source_qualities": {
            str(s): {
                "accuracy": q.accuracy,
                "recall": q.recall,
                "false_positive_rate": q.false_positive_rate,
                "precision": q.precision,
            }
            for s, q in sorted(qualities.items(), key=lambda kv: str(kv[0]))
        },
    }
    if report is not None:
        payload["load_report"] = {
            "rows": report.n_rows,
            "claims": report.n_claims,
            "duplicates": report.n_duplicates,
        }
    Path(path).write_text(json.dumps(payload, indent=2, sort_keys=True) + "\n")


def write_claims_csv(claims: Iterable[Claim], path) -> None:
    with Path(path).open("w", newline="") as fh:
        writer = csv.writer(fh)
        writer.writerow(list(CLAIM_COLUMNS))
        for c in claims:
            writer.writerow([c.source_id, c.item_id, c.value])


def write_gold_csv(gold: GoldStandard, path) -> None:
    with Path(path).open("w", newline="") as fh:
        writer = csv.writer(fh)
        writer.writerow(["item_id", "value"])
        for item in sorted(gold.truths, key=str):
            for value in sorted(gold.truths[item], key=str):
                writer.writerow([item, value])


def write_report_csv(rows, path) -> None:
    with Path(path).open("w", newline="") as fh:
        writer = csv.writer(fh)
        writer.writerow(["method", "grid_param", "grid_value",
                         "precision", "recall", "f1", "n_reps"])
        for row in rows:
            writer.writerow([
                row.method, row.grid_param,
                "" if row.grid_value is None else row.grid_value,
                _fmt(row.precision), _fmt(row.recall), _fmt(row.f1), row.n_reps,
            ])


def load_predictions(path) -> Dict[Any, set]:
    """Read predicted truths: either a plain `item_id,value` CSV or a
    fusion output CSV, in which case only rows marked selected count."""
    path = Path(path)
    with path.open(newline="") as fh:
        reader = csv.DictReader(fh)
        if reader.fieldnames is None:
            raise ParseError(f"empty predictions file {path}")
        has_selected = "selected" in reader.fieldnames
        missing = {"item_id", "value"} - set(reader.fieldnames)
        if missing:
            raise ParseError(f"predictions file {path} lacks columns {sorted(missing)}", line=1)
        predicted: Dict[Any, set] = {}
        for row in reader:
            if has_selected and row["selected"].strip().lower() not in ("true", "1", "yes"):
                continue
            predicted.setdefault(row["item_id"], set()).add(normalize_value(row["value"]))
    return predicted
