"""Command-line entry point: clean, split, mix, score, stats, synth.

Option precedence is flag > config file > built-in default; the built-in
defaults are the published cleaning thresholds.  The config file is a flat
``key = value`` document whose keys mirror the flag names (dashes or
underscores both work).  Every run logs its configuration, input sizes, and
per-phase wall times; ``--log json`` switches the log stream to one JSON
object per line.
"""

from __future__ import annotations

import json
import logging
import statistics
import sys
import time
from contextlib import contextmanager
from dataclasses import dataclass
from pathlib import Path
from typing import Callable, Iterator, TypeVar

import click

from . import corpus_io, dataset_builder, metrics, pipeline, synth
from .editdist import length_difference, levenshtein
from .errors import GedForgeError, ValidationError
from .normalize import load_contractions

logger = logging.getLogger("ged_forge")

T = TypeVar("T")


class _JsonFormatter(logging.Formatter):
    def format(self, record: logging.LogRecord) -> str:
        payload = {
            "ts": self.formatTime(record, "%Y-%m-%dT%H:%M:%S"),
            "level": record.levelname,
            "logger": record.name,
            "msg": record.getMessage(),
        }
        return json.dumps(payload, ensure_ascii=False)


def _setup_logging(log_format: str, verbose: int) -> None:
    handler = logging.StreamHandler(sys.stderr)
    if log_format == "json":
        handler.setFormatter(_JsonFormatter())
    else:
        handler.setFormatter(logging.Formatter("%(asctime)s %(levelname)s %(name)s: %(message)s"))
    logging.basicConfig(
        level=logging.DEBUG if verbose else logging.INFO, handlers=[handler], force=True
    )


@contextmanager
def _timed(phase: str) -> Iterator[None]:
    start = time.perf_counter()
    yield
    logger.info("%s finished in %.2fs", phase, time.perf_counter() - start)


def load_config_file(path: str | Path) -> dict[str, str]:
    """Parse a flat ``key = value`` config document, '#' comments allowed."""
    path = Path(path)
    if not path.is_file():
        raise ValidationError(f"cannot read config file: {path}")
    values: dict[str, str] = {}
    for lineno, raw in enumerate(path.read_text("utf-8").splitlines(), 1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        key, sep, value = line.partition("=")
        if not sep or not key.strip():
            raise ValidationError(f"{path}:{lineno}: expected 'key = value', got {raw!r}")
        values[key.strip().lower().replace("-", "_")] = value.strip()
    return values


@dataclass
class RunConfig:
    """Resolved global options plus the raw config-file values."""

    file_values: dict[str, str]
    workers: int
    log_format: str
    verbose: int

    def resolve(self, key: str, flag_value: T | None, default: T, conv: Callable[[str], T]) -> T:
        if flag_value is not None:
            return flag_value
        if key in self.file_values:
            try:
                return conv(self.file_values[key])
            except ValueError as e:
                raise ValidationError(f"config file value for {key}: {e}") from e
        return default

    def filter_config(
        self,
        lev_min: int | None = None,
        lev_max: int | None = None,
        max_len: int | None = None,
        norm_min: float | None = None,
        norm_max: float | None = None,
    ) -> pipeline.FilterConfig:
        defaults = pipeline.FilterConfig()
        return pipeline.FilterConfig(
            lev_min=self.resolve("lev_min", lev_min, defaults.lev_min, int),
            lev_max=self.resolve("lev_max", lev_max, defaults.lev_max, int),
            max_sentence_len=self.resolve("max_len", max_len, defaults.max_sentence_len, int),
            norm_min=self.resolve("norm_min", norm_min, defaults.norm_min, float),
            norm_max=self.resolve("norm_max", norm_max, defaults.norm_max, float),
        )


class _Group(click.Group):
    def invoke(self, ctx: click.Context):
        try:
            return super().invoke(ctx)
        except GedForgeError as e:
            raise click.ClickException(str(e)) from e


@click.group(cls=_Group, context_settings={"help_option_names": ["-h", "--help"]})
@click.option("--config", "config_path", default=None, help="Flat key=value config file.")
@click.option("--workers", type=int, default=None, help="Worker processes for clean (default 1).")
@click.option(
    "--log",
    "log_format",
    type=click.Choice(["text", "json"]),
    default=None,
    help="Log stream format (default text).",
)
@click.option("-v", "--verbose", count=True, help="Enable debug logging.")
@click.pass_context
def cli(ctx: click.Context, config_path: str | None, workers: int | None, log_format: str | None, verbose: int) -> None:
    """Corpus cleaning and dataset construction for grammatical error detection."""
    file_values = load_config_file(config_path) if config_path else {}
    run = RunConfig(file_values, 0, "", verbose)
    run.workers = run.resolve("workers", workers, 1, int)
    run.log_format = run.resolve("log", log_format, "text", str)
    _setup_logging(run.log_format, verbose)
    ctx.obj = run


@cli.command()
@click.option("--input", "input_path", required=True, help="Pair corpus (TSV, or JSONL by suffix).")
@click.option("--output-cleaned", required=True, help="Destination TSV for surviving pairs.")
@click.option("--output-discarded", required=True, help="Destination TSV for dropped pairs (3rd column = stage).")
@click.option("--report", "report_path", required=True, help="Destination CSV for the stage report.")
@click.option("--lev-min", type=int, default=None)
@click.option("--lev-max", type=int, default=None)
@click.option("--max-len", type=int, default=None)
@click.option("--norm-min", type=float, default=None)
@click.option("--norm-max", type=float, default=None)
@click.option("--contractions", "contractions_path", default=None, help="Alternative contraction table.")
@click.option("--sample", type=int, default=None, help="Keep only this many cleaned pairs.")
@click.option(
    "--sample-mode",
    type=click.Choice(["head", "random"]),
    default=None,
    help="How --sample picks pairs (default head).",
)
@click.option("--seed", type=int, default=None, help="Seed for --sample-mode random.")
@click.pass_obj
def clean(
    run: RunConfig,
    input_path: str,
    output_cleaned: str,
    output_discarded: str,
    report_path: str,
    lev_min: int | None,
    lev_max: int | None,
    max_len: int | None,
    norm_min: float | None,
    norm_max: float | None,
    contractions_path: str | None,
    sample: int | None,
    sample_mode: str | None,
    seed: int | None,
) -> None:
    """Run the eight-stage cleaning pipeline over a pair corpus."""
    config = run.filter_config(lev_min, lev_max, max_len, norm_min, norm_max)
    contractions_path = run.resolve("contractions", contractions_path, "", str) or None
    sample = run.resolve("sample", sample, 0, int) or None
    sample_mode = run.resolve("sample_mode", sample_mode, "head", str)
    seed = run.resolve("seed", seed, 0, int)
    table = load_contractions(contractions_path)
    logger.info(
        "clean: input=%s workers=%d thresholds=[lev %d..%d, len<=%d, norm %g..%g]",
        input_path,
        run.workers,
        config.lev_min,
        config.lev_max,
        config.max_sentence_len,
        config.norm_min,
        config.norm_max,
    )

    reader = corpus_io.read_pairs(input_path)
    removed = [0] * pipeline.N_STAGES
    total = 0
    cleaned_count = 0
    buffered: list[corpus_io.SentencePair] | None = [] if sample else None

    with _timed("clean"):
        with open(output_cleaned, "w", encoding="utf-8") as cleaned_file, open(
            output_discarded, "w", encoding="utf-8"
        ) as discarded_file:
            for pair, stage in pipeline.iter_classified(reader, config, table, run.workers):
                total += 1
                if stage is None:
                    if buffered is not None:
                        buffered.append(pair)
                    else:
                        cleaned_file.write(f"{pair.source}\t{pair.target}\n")
                        cleaned_count += 1
                else:
                    removed[stage - 1] += 1
                    discarded_file.write(f"{pair.source}\t{pair.target}\t{stage}\n")
            if buffered is not None:
                kept = pipeline.subsample(buffered, sample, sample_mode, seed)
                for pair in kept:
                    cleaned_file.write(f"{pair.source}\t{pair.target}\n")
                cleaned_count = len(kept)
                logger.info("sampled %d of %d cleaned pairs (%s)", sample, len(buffered), sample_mode)

    report = pipeline.build_report(removed, total)
    pipeline.report_to_file(report, report_path)
    for row in report:
        logger.info(
            "stage %d (%s): removed %d, remaining %d",
            row.stage_id,
            row.stage_name,
            row.removed,
            row.remaining,
        )
    logger.info(
        "clean: %d pairs in, %d written to %s, %d discarded, %d malformed rows skipped",
        total,
        cleaned_count,
        output_cleaned,
        total - (cleaned_count if buffered is None else len(buffered)),
        reader.malformed,
    )


@cli.command()
@click.option("--input", "input_path", required=True, help="Cleaned pair corpus (TSV).")
@click.option("--train-per-class", type=int, default=None, help="Training rows per label (default 90000).")
@click.option("--val-rows", type=int, default=None, help="Middle rows reserved for validation (default 20000).")
@click.option("--out-train", required=True, help="Destination JSONL for training examples.")
@click.option("--out-val", required=True, help="Destination JSONL for validation examples.")
@click.pass_obj
def split(
    run: RunConfig,
    input_path: str,
    train_per_class: int | None,
    val_rows: int | None,
    out_train: str,
    out_val: str,
) -> None:
    """Build the labeled train/validation split from a cleaned corpus."""
    spec = dataset_builder.SplitSpec(
        train_per_class=run.resolve("train_per_class", train_per_class, 90_000, int),
        val_rows=run.resolve("val_rows", val_rows, 20_000, int),
    )
    with _timed("split"):
        corpus = list(corpus_io.read_pairs(input_path))
        logger.info("split: %d rows, %d per training label, %d validation rows",
                    len(corpus), spec.train_per_class, spec.val_rows)
        train, val = dataset_builder.build_split(corpus, spec)
        n_train = corpus_io.write_labeled(train, out_train)
        n_val = corpus_io.write_labeled(val, out_val)
    logger.info("split: wrote %d train -> %s, %d val -> %s", n_train, out_train, n_val, out_val)


@cli.command()
@click.option("--cleaned", "cleaned_path", required=True, help="Labeled JSONL drawn from the cleaned set.")
@click.option("--discarded", "discarded_path", required=True, help="Labeled JSONL drawn from the discarded set.")
@click.option("--cleaned-count", type=int, required=True)
@click.option("--discarded-count", type=int, required=True)
@click.option("--seed", type=int, default=None, help="Draw seed (default 0).")
@click.option("--out", "out_path", required=True, help="Destination JSONL for the mixed batch.")
@click.pass_obj
def mix(
    run: RunConfig,
    cleaned_path: str,
    discarded_path: str,
    cleaned_count: int,
    discarded_count: int,
    seed: int | None,
    out_path: str,
) -> None:
    """Compose a training batch from cleaned and discarded pools."""
    spec = dataset_builder.MixSpec(
        cleaned_count=cleaned_count,
        discarded_count=discarded_count,
        seed=run.resolve("seed", seed, 0, int),
    )
    with _timed("mix"):
        cleaned = list(corpus_io.read_labeled(cleaned_path))
        discarded = list(corpus_io.read_labeled(discarded_path))
        logger.info(
            "mix: %d + %d requested from pools of %d and %d (seed %d)",
            spec.cleaned_count, spec.discarded_count, len(cleaned), len(discarded), spec.seed,
        )
        batch = dataset_builder.build_mix(cleaned, discarded, spec)
        count = corpus_io.write_labeled(batch, out_path)
    logger.info("mix: wrote %d examples -> %s", count, out_path)


@cli.command()
@click.option("--predictions", "predictions_path", required=True, help="Prediction JSONL to score.")
@click.option(
    "--mode",
    type=click.Choice(["positive", "macro", "both"]),
    default="both",
    show_default=True,
)
@click.option(
    "--format",
    "output_format",
    type=click.Choice(["table", "json", "csv"]),
    default="table",
    show_default=True,
)
def score(predictions_path: str, mode: str, output_format: str) -> None:
    """Score a prediction file: confusion matrix plus accuracy/P/R/F1."""
    with _timed("score"):
        matrix, reports = metrics.score_file(predictions_path)
    logger.info("score: %d records from %s", matrix.total, predictions_path)
    wanted = {"positive": ["positive_class"], "macro": ["macro"], "both": list(metrics.MODES)}[mode]
    for m in wanted:
        if reports[m].zero_division:
            logger.warning("%s: a zero denominator was hit; affected metrics reported as 0", m)

    def row(m: str) -> list:
        r = reports[m]
        return [
            m,
            matrix.tp,
            matrix.tn,
            matrix.fp,
            matrix.fn,
            f"{metrics.round_half_up(r.accuracy):.2f}",
            f"{metrics.round_half_up(r.precision):.2f}",
            f"{metrics.round_half_up(r.recall):.2f}",
            f"{metrics.round_half_up(r.f1):.2f}",
        ]

    header = ["mode", "tp", "tn", "fp", "fn", "accuracy", "precision", "recall", "f1"]
    if output_format == "json":
        payload = {
            "confusion": {"tp": matrix.tp, "tn": matrix.tn, "fp": matrix.fp, "fn": matrix.fn},
            "metrics": {
                m: {
                    "accuracy": reports[m].accuracy,
                    "precision": reports[m].precision,
                    "recall": reports[m].recall,
                    "f1": reports[m].f1,
                    "zero_division": reports[m].zero_division,
                }
                for m in wanted
            },
        }
        click.echo(json.dumps(payload, indent=2))
    elif output_format == "csv":
        click.echo(",".join(header))
        for m in wanted:
            click.echo(",".join(str(v) for v in row(m)))
    else:
        widths = [max(len(str(v)) for v in col) for col in zip(header, *(row(m) for m in wanted))]
        click.echo("  ".join(h.ljust(w) for h, w in zip(header, widths)))
        for m in wanted:
            click.echo("  ".join(str(v).ljust(w) for v, w in zip(row(m), widths)))


def _summary(name: str, data: list) -> dict:
    if not data:
        return {"name": name, "count": 0}
    stats: dict = {
        "name": name,
        "count": len(data),
        "min": min(data),
        "max": max(data),
        "mean": statistics.fmean(data),
    }
    if len(data) >= 2:
        quantiles = statistics.quantiles(data, n=100, method="inclusive")
        for p in (25, 50, 75, 90, 99):
            stats[f"p{p}"] = quantiles[p - 1]
    return stats


@cli.command()
@click.option("--input", "input_path", required=True, help="Pair corpus to profile.")
@click.option(
    "--format",
    "output_format",
    type=click.Choice(["table", "json"]),
    default="table",
    show_default=True,
)
def stats(input_path: str, output_format: str) -> None:
    """Distributions of the quantities the cleaning filters act on."""
    source_lens: list[int] = []
    target_lens: list[int] = []
    distances: list[int] = []
    normalized: list[float] = []
    length_diffs: list[int] = []
    with _timed("stats"):
        for pair in corpus_io.read_pairs(input_path):
            source_lens.append(len(pair.source))
            target_lens.append(len(pair.target))
            d = levenshtein(pair.source, pair.target).distance
            distances.append(d)
            normalized.append(d / max(len(pair.source), len(pair.target)))
            length_diffs.append(length_difference(pair.source, pair.target))
    summaries = [
        _summary("source_len", source_lens),
        _summary("target_len", target_lens),
        _summary("levenshtein", distances),
        _summary("normalized_levenshtein", normalized),
        _summary("length_difference", length_diffs),
    ]
    if output_format == "json":
        click.echo(json.dumps(summaries, indent=2))
        return
    columns = ["name", "count", "min", "max", "mean", "p25", "p50", "p75", "p90", "p99"]
    click.echo("  ".join(c.ljust(22 if c == "name" else 8) for c in columns))
    for s in summaries:
        cells = []
        for c in columns:
            v = s.get(c, "-")
            if isinstance(v, float):
                v = f"{v:.3f}"
            cells.append(str(v).ljust(22 if c == "name" else 8))
        click.echo("  ".join(cells))


@cli.command("synth")
@click.option("--rows", type=int, required=True, help="Pairs to generate.")
@click.option("--spec", "spec_path", default=None, help="Category proportions (key = value file).")
@click.option("--seed", type=int, default=None, help="Generator seed (default 0).")
@click.option("--out", "out_path", required=True, help="Destination TSV for the generated pairs.")
@click.option("--expected", "expected_path", required=True, help="Destination CSV for the expected stage report.")
@click.pass_obj
def synth_cmd(
    run: RunConfig,
    rows: int,
    spec_path: str | None,
    seed: int | None,
    out_path: str,
    expected_path: str,
) -> None:
    """Generate a synthetic corpus plus its exact expected stage report."""
    proportions = dict(synth.DEFAULT_PROPORTIONS)
    if spec_path:
        raw = load_config_file(spec_path)
        try:
            proportions = {k: float(v) for k, v in raw.items()}
        except ValueError as e:
            raise ValidationError(f"{spec_path}: proportions must be numbers: {e}") from e
    spec = synth.SynthSpec(rows, proportions, run.resolve("seed", seed, 0, int))
    config = run.filter_config()
    with _timed("synth"):
        pairs, expected = synth.generate(spec, config)
        count = corpus_io.write_pairs(pairs, out_path)
        pipeline.report_to_file(expected, expected_path)
    logger.info("synth: wrote %d pairs -> %s, expected report -> %s", count, out_path, expected_path)


def main() -> None:
    cli(prog_name="ged-forge")


if __name__ == "__main__":
    main()
