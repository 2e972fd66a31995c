"""Streaming readers and writers for sentence-pair corpora and labeled datasets.

File formats:
  pairs        UTF-8 TSV, two fields per line (``source<TAB>target``), ``\\n``
               terminated, no header.  JSONL with ``{"source", "target"}``
               objects is accepted as an alternative input format.
  discarded    pair TSV plus a third ``stage_id`` column.
  labeled      JSONL, one ``{"text": str, "label": 0|1}`` object per line.
  predictions  JSONL, one ``{"text": str, "label": 0|1, "pred": 0|1}`` object
               per line.

Pair readers are lenient: malformed rows (wrong field count, empty fields,
embedded control characters, unparseable JSON) are skipped and counted, never
fatal.  Labeled and prediction readers are strict: those files are produced
by this toolkit or a model under test, so a bad record is a real defect and
raises with the offending line number.
"""

from __future__ import annotations

import json
import logging
from dataclasses import dataclass
from pathlib import Path
from typing import Iterable, Iterator

from .errors import CorpusIOError, ValidationError

logger = logging.getLogger(__name__)

_FORBIDDEN_CHARS = ("\t", "\n", "\r")


@dataclass(frozen=True, slots=True)
class SentencePair:
    """One corpus row: candidate-incorrect sentence and its correction."""

    source: str
    target: str


@dataclass(frozen=True, slots=True)
class LabeledExample:
    """A single sentence with a binary grammaticality label (0 = incorrect)."""

    text: str
    label: int


@dataclass(frozen=True, slots=True)
class PredictionRecord:
    """A scored sentence: gold label plus a model's predicted label."""

    text: str
    label: int
    pred: int


def _field_ok(value: object) -> bool:
    return (
        isinstance(value, str)
        and value != ""
        and not any(c in value for c in _FORBIDDEN_CHARS)
    )


class PairReader:
    """Iterator over the sentence pairs in a TSV or JSONL file.

    Rows are yielded in file order and never buffered, so memory use is
    independent of corpus size.  ``malformed`` holds the running count of
    skipped rows and is final once iteration completes; ``pairs_read`` counts
    the pairs yielded so far.
    """

    def __init__(self, path: str | Path, fmt: str | None = None):
        self.path = Path(path)
        if fmt is None:
            fmt = "jsonl" if self.path.suffix in (".jsonl", ".json") else "tsv"
        if fmt not in ("tsv", "jsonl"):
            raise ValidationError(f"unknown pair format {fmt!r} (expected tsv or jsonl)")
        self.fmt = fmt
        self.malformed = 0
        self.pairs_read = 0
        if not self.path.is_file():
            raise CorpusIOError(f"cannot read pair file: {self.path}")

    def __iter__(self) -> Iterator[SentencePair]:
        with open(self.path, encoding="utf-8") as f:
            for lineno, line in enumerate(f, 1):
                pair = self._parse(line.rstrip("\r\n"), lineno)
                if pair is None:
                    self.malformed += 1
                else:
                    self.pairs_read += 1
                    yield pair
        if self.malformed:
            logger.warning(
                "%s: skipped %d malformed row(s), read %d pair(s)",
                self.path,
                self.malformed,
                self.pairs_read,
            )

    def _parse(self, line: str, lineno: int) -> SentencePair | None:
        if self.fmt == "tsv":
            fields = line.split("\t")
            if len(fields) != 2:
                logger.debug("%s:%d: expected 2 fields, got %d", self.path, lineno, len(fields))
                return None
            source, target = fields
        else:
            try:
                obj = json.loads(line)
                source, target = obj["source"], obj["target"]
            except (json.JSONDecodeError, KeyError, TypeError):
                logger.debug("%s:%d: not a {source, target} object", self.path, lineno)
                return None
        if not (_field_ok(source) and _field_ok(target)):
            logger.debug("%s:%d: empty field or embedded control character", self.path, lineno)
            return None
        return SentencePair(source, target)


def read_pairs(path: str | Path, fmt: str | None = None) -> PairReader:
    """Open a pair corpus for streaming.  ``fmt`` defaults to the file suffix
    (``.jsonl``/``.json`` means JSONL, anything else TSV)."""
    return PairReader(path, fmt)


def _validated_pair(pair: SentencePair, path: Path, row: int) -> SentencePair:
    if not (_field_ok(pair.source) and _field_ok(pair.target)):
        raise ValidationError(
            f"refusing to write unrepresentable pair at row {row} of {path}: "
            "fields must be non-empty and free of tabs/newlines"
        )
    return pair


def write_pairs(pairs: Iterable[SentencePair], path: str | Path) -> int:
    """Write pairs as two-column TSV.  Returns the number of rows written."""
    path = Path(path)
    count = 0
    try:
        with open(path, "w", encoding="utf-8") as f:
            for pair in pairs:
                _validated_pair(pair, path, count + 1)
                f.write(f"{pair.source}\t{pair.target}\n")
                count += 1
    except OSError as e:
        raise CorpusIOError(
            f"write failed after {count} row(s); partial output left at {path}: {e}"
        ) from e
    return count


def write_discarded(pairs: Iterable[tuple[SentencePair, int]], path: str | Path) -> int:
    """Write (pair, stage_id) tuples as three-column TSV."""
    path = Path(path)
    count = 0
    try:
        with open(path, "w", encoding="utf-8") as f:
            for pair, stage_id in pairs:
                _validated_pair(pair, path, count + 1)
                f.write(f"{pair.source}\t{pair.target}\t{stage_id}\n")
                count += 1
    except OSError as e:
        raise CorpusIOError(
            f"write failed after {count} row(s); partial output left at {path}: {e}"
        ) from e
    return count


def read_discarded(path: str | Path) -> Iterator[tuple[SentencePair, int]]:
    """Read a discarded-pair TSV back as (pair, stage_id) tuples."""
    path = Path(path)
    if not path.is_file():
        raise CorpusIOError(f"cannot read discarded file: {path}")
    with open(path, encoding="utf-8") as f:
        for lineno, line in enumerate(f, 1):
            fields = line.rstrip("\r\n").split("\t")
            if len(fields) != 3:
                raise CorpusIOError(f"{path}:{lineno}: expected 3 fields, got {len(fields)}")
            try:
                stage_id = int(fields[2])
            except ValueError:
                raise CorpusIOError(f"{path}:{lineno}: stage_id {fields[2]!r} is not an integer")
            yield SentencePair(fields[0], fields[1]), stage_id


def _check_label(value: object, name: str, path: Path, lineno: int | None = None) -> int:
    if value not in (0, 1):
        where = f"{path}:{lineno}" if lineno else str(path)
        raise ValidationError(f"{where}: {name} must be 0 or 1, got {value!r}")
    return int(value)  # type: ignore[arg-type]


def write_labeled(examples: Iterable[LabeledExample], path: str | Path) -> int:
    """Write labeled examples as JSONL.  Returns the number of records written."""
    path = Path(path)
    count = 0
    try:
        with open(path, "w", encoding="utf-8") as f:
            for ex in examples:
                label = _check_label(ex.label, "label", path)
                f.write(json.dumps({"text": ex.text, "label": label}, ensure_ascii=False) + "\n")
                count += 1
    except OSError as e:
        raise CorpusIOError(
            f"write failed after {count} record(s); partial output left at {path}: {e}"
        ) from e
    return count


def read_labeled(path: str | Path) -> Iterator[LabeledExample]:
    """Read a labeled JSONL file.  Malformed records are fatal."""
    path = Path(path)
    if not path.is_file():
        raise CorpusIOError(f"cannot read labeled file: {path}")
    with open(path, encoding="utf-8") as f:
        for lineno, line in enumerate(f, 1):
            try:
                obj = json.loads(line)
                text = obj["text"]
            except (json.JSONDecodeError, KeyError, TypeError) as e:
                raise CorpusIOError(f"{path}:{lineno}: bad labeled record: {e}") from e
            if not isinstance(text, str):
                raise CorpusIOError(f"{path}:{lineno}: text is not a string")
            yield LabeledExample(text, _check_label(obj.get("label"), "label", path, lineno))


def write_predictions(records: Iterable[PredictionRecord], path: str | Path) -> int:
    """Write prediction records as JSONL.  Returns the number written."""
    path = Path(path)
    count = 0
    try:
        with open(path, "w", encoding="utf-8") as f:
            for rec in records:
                row = {
                    "text": rec.text,
                    "label": _check_label(rec.label, "label", path),
                    "pred": _check_label(rec.pred, "pred", path),
                }
                f.write(json.dumps(row, ensure_ascii=False) + "\n")
                count += 1
    except OSError as e:
        raise CorpusIOError(
            f"write failed after {count} record(s); partial output left at {path}: {e}"
        ) from e
    return count


def read_predictions(path: str | Path) -> Iterator[PredictionRecord]:
    """Read a prediction JSONL file.  Malformed records are fatal with line number."""
    path = Path(path)
    if not path.is_file():
        raise CorpusIOError(f"cannot read prediction file: {path}")
    with open(path, encoding="utf-8") as f:
        for lineno, line in enumerate(f, 1):
            try:
                obj = json.loads(line)
                text = obj["text"]
            except (json.JSONDecodeError, KeyError, TypeError) as e:
                raise CorpusIOError(f"{path}:{lineno}: bad prediction record: {e}") from e
            if not isinstance(text, str):
                raise CorpusIOError(f"{path}:{lineno}: text is not a string")
            yield PredictionRecord(
                text,
                _check_label(obj.get("label"), "label", path, lineno),
                _check_label(obj.get("pred"), "pred", path, lineno),
            )
