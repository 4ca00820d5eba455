"""Command-line entry point: ingestion, fusion, synthetic benchmarks,
evaluation, and report emission.

Set FUSION_LOG=DEBUG (or any logging level name) for verbose output.
"""

from __future__ import annotations

import dataclasses
import json
import logging
import os
import sys
from pathlib import Path

import click

from . import io as mio
from .approx import approx_fuse
from .errors import FusionError
from .exact import exact_fuse
from .methods import FUSION_BACKENDS, fusion_backend
from .model import PriorConfig, SourceQuality
from .quality import IterationConfig, iterate
from .synth import SynthConfig, compare, evaluate, generate

log = logging.getLogger(__name__)

_CONFIG_KEYS = {
    "n", "alpha", "truth_count_dist", "init_quality", "max_iterations",
    "prior_mode", "accuracy_mode", "exact_candidate_cap",
}


@dataclasses.dataclass
class RunConfig:
    prior: PriorConfig
    init_quality: SourceQuality
    max_iterations: int = 5
    prior_mode: str = "literal"
    accuracy_mode: str = "per-item"
    exact_candidate_cap: int = 8


def _load_run_config(path) -> RunConfig:
    raw = {}
    if path is not None:
        try:
            raw = json.loads(Path(path).read_text())
        except (OSError, json.JSONDecodeError) as exc:
            raise click.UsageError(f"cannot read config {path}: {exc}")
    unknown = set(raw) - _CONFIG_KEYS
    if unknown:
        raise click.UsageError(f"invalid config keys: {sorted(unknown)}")
    try:
        dist = raw.get("truth_count_dist")
        prior_kwargs = {
            "n": raw.get("n", 10),
            "alpha": raw.get("alpha", 0.25),
        }
        if dist is not None:
            prior_kwargs["truth_count_dist"] = {int(k): float(p) for k, p in dist.items()}
        prior = PriorConfig(**prior_kwargs)
        iq = raw.get("init_quality", {})
        init_quality = SourceQuality(
            accuracy=iq.get("A", 0.8),
            recall=iq.get("R", 0.8),
            false_positive_rate=iq.get("Q", 0.2),
            precision=iq.get("P", 0.8),
        )
    except ValueError as exc:
        raise click.UsageError(f"invalid config: {exc}")
    cfg = RunConfig(prior=prior, init_quality=init_quality)
    cfg.max_iterations = int(raw.get("max_iterations", cfg.max_iterations))
    cfg.prior_mode = raw.get("prior_mode", cfg.prior_mode)
    cfg.accuracy_mode = raw.get("accuracy_mode", cfg.accuracy_mode)
    cfg.exact_candidate_cap = int(raw.get("exact_candidate_cap", cfg.exact_candidate_cap))
    if cfg.prior_mode not in ("literal", "example-compatible"):
        raise click.UsageError(f"invalid prior_mode {cfg.prior_mode!r}")
    if cfg.accuracy_mode not in ("per-item", "literal"):
        raise click.UsageError(f"invalid accuracy_mode {cfg.accuracy_mode!r}")
    return cfg


def _backend_for(method: str, cfg: RunConfig):
    if method == "hybrid":
        return lambda cs, q, p: approx_fuse(cs, q, p, prior_mode=cfg.prior_mode,
                                            record_steps=False)
    if method == "hybrid-exact":
        return lambda cs, q, p: exact_fuse(cs, q, p,
                                           max_candidates=cfg.exact_candidate_cap,
                                           prior_mode=cfg.prior_mode)
    try:
        return fusion_backend(method)
    except ValueError as exc:
        raise click.UsageError(str(exc))


@click.group()
def main():
    """Multi-truth data fusion toolkit."""
    level = os.environ.get("FUSION_LOG", "WARNING").upper()
    logging.basicConfig(level=getattr(logging, level, logging.WARNING),
                        format="%(levelname)s %(name)s: %(message)s")


@main.command()
@click.option("--method", required=True,
              type=click.Choice(sorted(FUSION_BACKENDS)), help="Fusion method.")
@click.option("--claims", "claims_path", required=True,
              type=click.Path(exists=True, dir_okay=False), help="Claims CSV or JSONL.")
@click.option("--config", "config_path", type=click.Path(exists=True, dir_okay=False),
              help="JSON run configuration.")
@click.option("--out", "out_prefix", required=True,
              help="Output prefix: writes <prefix>.csv and <prefix>.json.")
@click.option("--threads", type=int, default=None, help="Item-parallel worker count.")
def fuse(method, claims_path, config_path, out_prefix, threads):
    """Fuse a claims file and write per-value probabilities plus a run
    summary."""
    cfg = _load_run_config(config_path)
    dataset, report = mio.load_claims(claims_path)
    backend = _backend_for(method, cfg)
    iter_cfg = IterationConfig(init_quality=cfg.init_quality,
                               max_iterations=cfg.max_iterations,
                               accuracy_mode=cfg.accuracy_mode)
    results, qualities, records = iterate(dataset, cfg.prior, backend, iter_cfg,
                                          threads=threads)
    iterations = max((r.iteration for r in records), default=0)
    mio.write_probabilities(results, f"{out_prefix}.csv")
    mio.write_run_summary(f"{out_prefix}.json", method, iterations, qualities, report)
    click.echo(f"fused {len(results)} items with {method}; wrote {out_prefix}.csv")


@main.command()
@click.option("--config", "config_path", type=click.Path(exists=True, dir_okay=False),
              help="JSON with synthetic-generator fields.")
@click.option("--seed", type=int, default=None, help="Override the RNG seed.")
@click.option("--out-claims", required=True, help="Claims CSV to write.")
@click.option("--out-gold", required=True, help="Gold CSV to write.")
def synth(config_path, seed, out_claims, out_gold):
    """Generate a synthetic dataset with known ground truth."""
    raw = {}
    if config_path is not None:
        try:
            raw = json.loads(Path(config_path).read_text())
        except (OSError, json.JSONDecodeError) as exc:
            raise click.UsageError(f"cannot read config {config_path}: {exc}")
    fields = {f.name for f in dataclasses.fields(SynthConfig)}
    unknown = set(raw) - fields
    if unknown:
        raise click.UsageError(f"invalid synth config keys: {sorted(unknown)}")
    if seed is not None:
        raw["rng_seed"] = seed
    try:
        config = SynthConfig(**raw)
    except (TypeError, ValueError) as exc:
        raise click.UsageError(f"invalid synth config: {exc}")
    claims, gold = generate(config)
    mio.write_claims_csv(claims, out_claims)
    mio.write_gold_csv(gold, out_gold)
    click.echo(f"generated {len(claims)} claims on {len(gold.truths)} items")


@main.command("eval")
@click.option("--pred", "pred_path", required=True,
              type=click.Path(exists=True, dir_okay=False),
              help="Predicted truths (item_id,value CSV or fuse output).")
@click.option("--gold", "gold_path", required=True,
              type=click.Path(exists=True, dir_okay=False), help="Gold CSV.")
def eval_cmd(pred_path, gold_path):
    """Score predictions against a gold standard; prints JSON metrics."""
    predicted = mio.load_predictions(pred_path)
    gold = mio.load_gold(gold_path)
    for item in sorted(set(gold.truths) - set(predicted), key=str):
        log.warning("gold item %r has no prediction; counted against recall", item)
    extra = set(predicted) - set(gold.truths)
    if extra:
        raise click.ClickException(
            f"predictions contain items absent from the gold standard: {sorted(extra)[:5]}")
    precision, recall, f1 = evaluate(predicted, gold)
    click.echo(json.dumps({"precision": precision, "recall": recall, "f1": f1},
                          sort_keys=True))


def _parse_grid(spec: str):
    try:
        param, values = spec.split("=", 1)
        parsed = [float(v) for v in values.split(",") if v != ""]
    except ValueError:
        raise click.UsageError(f"cannot parse grid {spec!r}; expected param=v1,v2,...")
    if not parsed:
        raise click.UsageError(f"empty grid {spec!r}")
    fields = {f.name for f in dataclasses.fields(SynthConfig)}
    if param not in fields:
        raise click.UsageError(f"unknown grid parameter {param!r}")
    return {param: parsed}


def _run_compare(methods, reps, grid, seed, threads, out):
    names = [m.strip() for m in methods.split(",") if m.strip()]
    for name in names:
        if name not in FUSION_BACKENDS:
            raise click.UsageError(
                f"unknown method {name!r}; expected one of {sorted(FUSION_BACKENDS)}")
    config = SynthConfig(rng_seed=seed)
    rows = compare(names, config, sweep=grid, repetitions=reps, threads=threads)
    mio.write_report_csv(rows, out)
    click.echo(f"wrote {len(rows)} report rows to {out}")


@main.command("compare")
@click.option("--methods", required=True, help="Comma-separated method names.")
@click.option("--reps", type=int, default=20, show_default=True)
@click.option("--grid", "grid_spec", default=None,
              help="Parameter sweep, e.g. source_accuracy=0.2,0.4,0.6.")
@click.option("--seed", type=int, default=0, show_default=True)
@click.option("--threads", type=int, default=None)
@click.option("--out", required=True, help="Report CSV to write.")
def compare_cmd(methods, reps, grid_spec, seed, threads, out):
    """Benchmark methods on synthetic data and write a report table."""
    grid = _parse_grid(grid_spec) if grid_spec else None
    _run_compare(methods, reps, grid, seed, threads, out)


_SWEEPS = {
    "truths": {"truth_count_mean": [2, 4, 6, 8, 10]},
    "accuracy": {"source_accuracy": [0.2, 0.4, 0.6, 0.8, 1.0]},
    "recall": {"source_recall": [0.2, 0.4, 0.6, 0.8, 1.0]},
    "extra": {"extra_ratio": [0.2, 0.4, 0.6, 0.8, 1.0]},
}


@main.command()
@click.option("--figure", required=True, type=click.Choice(sorted(_SWEEPS)),
              help="Which parameter to sweep.")
@click.option("--methods", default="hybrid,accu,precrec,twostep",
              show_default=True, help="Comma-separated method names.")
@click.option("--reps", type=int, default=20, show_default=True)
@click.option("--seed", type=int, default=0, show_default=True)
@click.option("--threads", type=int, default=None)
@click.option("--out", required=True, help="Report CSV to write.")
def sweep(figure, methods, reps, seed, threads, out):
    """Run one of the canned benchmark parameter sweeps."""
    _run_compare(methods, reps, _SWEEPS[figure], seed, threads, out)


def entry():  # pragma: no cover
    try:
        main()
    except FusionError as exc:
        print(f"error: {exc}", file=sys.stderr)
        sys.exit(1)


if __name__ == "__main__":  # pragma: no cover
    entry()
