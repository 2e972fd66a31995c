"""Eight-stage cleaning pipeline for sentence-pair corpora.

Stage order, applied per pair:

  1. drop pairs whose source and target are byte-identical
  2. fold both columns to ASCII (persisted), drop new equals
  3. collapse whitespace (persisted), drop new equals
  4. lowercase (persisted), drop new equals
  5. expand contractions (persisted), drop new equals
  6. compare punctuation-stripped forms, drop equals; the stripped text is
     comparison-only and never persisted
  7. drop pairs outside the edit-distance band or over the length cap
  8. drop pairs outside the normalized edit-distance band

Every pair therefore either survives all eight stages (carrying the stage
2-5 transforms) or is discarded exactly once, tagged with the dropping
stage and carrying the transforms persisted up to that point.  Stages are
pure per-pair maps, so the work parallelizes across a process pool; results
are merged back in input order, which keeps outputs and reports
byte-deterministic for any worker count.
"""

from __future__ import annotations

import csv
import multiprocessing
import random
from dataclasses import dataclass
from pathlib import Path
from typing import Iterable, Iterator, Sequence

from .corpus_io import SentencePair
from .editdist import levenshtein
from .errors import CorpusIOError, ValidationError
from .normalize import (
    ContractionTable,
    collapse_spaces,
    expand_contractions,
    fold_ascii,
    load_contractions,
    lowercase,
    strip_punctuation,
)

STAGE_NAMES = {
    1: "identical pair removal",
    2: "ascii normalization",
    3: "whitespace cleanup",
    4: "lowercasing",
    5: "contraction expansion",
    6: "punctuation-insensitive dedup",
    7: "length and edit distance filter",
    8: "normalized edit distance filter",
}
N_STAGES = len(STAGE_NAMES)


@dataclass(frozen=True)
class FilterConfig:
    """Numeric thresholds for stages 7 and 8.

    Distance bounds are inclusive on both ends; the length cap is the
    largest admissible character count for either column.
    """

    lev_min: int = 7
    lev_max: int = 42
    max_sentence_len: int = 100
    norm_min: float = 0.08
    norm_max: float = 0.5

    def __post_init__(self) -> None:
        if not 0 <= self.lev_min <= self.lev_max:
            raise ValidationError(
                f"need 0 <= lev_min <= lev_max, got [{self.lev_min}, {self.lev_max}]"
            )
        if not 0 <= self.norm_min <= self.norm_max <= 1:
            raise ValidationError(
                f"need 0 <= norm_min <= norm_max <= 1, got [{self.norm_min}, {self.norm_max}]"
            )
        if self.max_sentence_len <= 0:
            raise ValidationError(f"max_sentence_len must be positive, got {self.max_sentence_len}")


@dataclass(frozen=True, slots=True)
class StageReport:
    """One report row: pairs removed by a stage and pairs left after it."""

    stage_id: int
    stage_name: str
    removed: int
    remaining: int


@dataclass
class PipelineOutput:
    cleaned: list[SentencePair]
    discarded: list[tuple[SentencePair, int]]
    report: list[StageReport]


def classify_pair(
    pair: SentencePair, config: FilterConfig, table: ContractionTable
) -> tuple[int | None, str, str]:
    """Run one pair through all stages.

    Returns (stage that dropped it, or None for a survivor; source and
    target as of that moment, i.e. with all persisted transforms applied).
    """
    s, t = pair.source, pair.target
    if s == t:
        return 1, s, t
    s, t = fold_ascii(s), fold_ascii(t)
    if s == t:
        return 2, s, t
    s, t = collapse_spaces(s), collapse_spaces(t)
    if s == t:
        return 3, s, t
    s, t = lowercase(s), lowercase(t)
    if s == t:
        return 4, s, t
    s, t = expand_contractions(s, table), expand_contractions(t, table)
    if s == t:
        return 5, s, t
    if strip_punctuation(s) == strip_punctuation(t):
        return 6, s, t
    if len(s) > config.max_sentence_len or len(t) > config.max_sentence_len:
        return 7, s, t
    result = levenshtein(s, t, bound=config.lev_max)
    if result.exceeded or result.distance < config.lev_min:
        return 7, s, t
    # A pair unequal after stages 2-5 has max length >= 1.
    norm = result.distance / max(len(s), len(t))
    if not config.norm_min <= norm <= config.norm_max:
        return 8, s, t
    return None, s, t


_WORKER_CONFIG: FilterConfig | None = None
_WORKER_TABLE: ContractionTable | None = None


def _init_worker(config: FilterConfig, table: ContractionTable) -> None:
    global _WORKER_CONFIG, _WORKER_TABLE
    _WORKER_CONFIG = config
    _WORKER_TABLE = table


def _classify_in_worker(pair: SentencePair) -> tuple[int | None, str, str]:
    assert _WORKER_CONFIG is not None and _WORKER_TABLE is not None
    return classify_pair(pair, _WORKER_CONFIG, _WORKER_TABLE)


def iter_classified(
    pairs: Iterable[SentencePair],
    config: FilterConfig,
    table: ContractionTable,
    workers: int = 1,
) -> Iterator[tuple[SentencePair, int | None]]:
    """Classify pairs in input order, yielding (transformed pair, stage or None).

    With ``workers > 1`` classification runs on a process pool; ``imap``
    merges results back in submission order, so output is identical to the
    single-process run.
    """
    if workers <= 1:
        for pair in pairs:
            stage, s, t = classify_pair(pair, config, table)
            yield SentencePair(s, t), stage
        return
    with multiprocessing.Pool(
        workers, initializer=_init_worker, initargs=(config, table)
    ) as pool:
        for stage, s, t in pool.imap(_classify_in_worker, pairs, chunksize=256):
            yield SentencePair(s, t), stage


def build_report(removed_by_stage: Sequence[int], input_size: int) -> list[StageReport]:
    """Assemble the 8-row report from per-stage removal counts."""
    if len(removed_by_stage) != N_STAGES:
        raise ValidationError(f"expected {N_STAGES} stage counts, got {len(removed_by_stage)}")
    report = []
    remaining = input_size
    for stage_id in range(1, N_STAGES + 1):
        removed = removed_by_stage[stage_id - 1]
        remaining -= removed
        report.append(StageReport(stage_id, STAGE_NAMES[stage_id], removed, remaining))
    return report


def run_pipeline(
    pairs: Iterable[SentencePair],
    config: FilterConfig | None = None,
    table: ContractionTable | None = None,
    workers: int = 1,
) -> PipelineOutput:
    """Clean a corpus: returns survivors, tagged discards, and the stage report."""
    if config is None:
        config = FilterConfig()
    if table is None:
        table = load_contractions()
    cleaned: list[SentencePair] = []
    discarded: list[tuple[SentencePair, int]] = []
    removed = [0] * N_STAGES
    total = 0
    for pair, stage in iter_classified(pairs, config, table, workers):
        total += 1
        if stage is None:
            cleaned.append(pair)
        else:
            discarded.append((pair, stage))
            removed[stage - 1] += 1
    return PipelineOutput(cleaned, discarded, build_report(removed, total))


def validate_report(report: Sequence[StageReport], input_size: int) -> None:
    """Check the conservation invariant: remaining[k] = remaining[k-1] - removed[k].

    Raises ValidationError on the first violated row.
    """
    remaining = input_size
    for row in report:
        if row.removed < 0:
            raise ValidationError(f"stage {row.stage_id}: negative removed count {row.removed}")
        expected = remaining - row.removed
        if row.remaining != expected:
            raise ValidationError(
                f"stage {row.stage_id}: remaining {row.remaining} != "
                f"{remaining} - {row.removed} = {expected}"
            )
        remaining = row.remaining


def report_to_file(report: Sequence[StageReport], path: str | Path) -> None:
    """Write the stage report as CSV (stage_id, stage_name, removed, remaining)."""
    if len(report) != N_STAGES:
        raise ValidationError(f"report must have {N_STAGES} rows, got {len(report)}")
    path = Path(path)
    try:
        with open(path, "w", encoding="utf-8", newline="") as f:
            writer = csv.writer(f)
            writer.writerow(["stage_id", "stage_name", "removed", "remaining"])
            for row in report:
                writer.writerow([row.stage_id, row.stage_name, row.removed, row.remaining])
    except OSError as e:
        raise CorpusIOError(f"cannot write report to {path}: {e}") from e


def report_from_file(path: str | Path) -> list[StageReport]:
    """Read a stage report CSV written by report_to_file."""
    path = Path(path)
    if not path.is_file():
        raise CorpusIOError(f"cannot read report file: {path}")
    report = []
    with open(path, encoding="utf-8", newline="") as f:
        reader = csv.DictReader(f)
        for row in reader:
            try:
                report.append(
                    StageReport(
                        int(row["stage_id"]),
                        row["stage_name"],
                        int(row["removed"]),
                        int(row["remaining"]),
                    )
                )
            except (KeyError, TypeError, ValueError) as e:
                raise CorpusIOError(f"{path}: bad report row {row!r}: {e}") from e
    return report


def subsample(
    pairs: Sequence[SentencePair], n: int, mode: str = "head", seed: int = 0
) -> list[SentencePair]:
    """Take n pairs from a cleaned corpus, either the head or a seeded sample."""
    if n > len(pairs):
        raise ValidationError(f"cannot sample {n} pairs from a corpus of {len(pairs)}")
    if mode == "head":
        return list(pairs[:n])
    if mode == "random":
        return random.Random(seed).sample(list(pairs), n)
    raise ValidationError(f"unknown sample mode {mode!r} (expected head or random)")
