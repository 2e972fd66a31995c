"""Confusion-matrix construction and classification metrics.

The positive class is "grammatically correct" (label 1): tp counts label-1
sentences predicted 1, tn counts label-0 sentences predicted 0.  Metrics
come in two averaging modes because published GED results mix them:
``positive_class`` reports precision/recall/F1 of label 1 alone, ``macro``
averages the per-class values.  Accuracy is identical in both modes.
"""

from __future__ import annotations

from dataclasses import dataclass
from decimal import ROUND_HALF_UP, Decimal
from pathlib import Path
from typing import Iterable

from .corpus_io import PredictionRecord, read_predictions
from .errors import ValidationError

MODES = ("positive_class", "macro")


@dataclass(frozen=True, slots=True)
class ConfusionMatrix:
    tp: int = 0
    tn: int = 0
    fp: int = 0
    fn: int = 0

    def __post_init__(self) -> None:
        if min(self.tp, self.tn, self.fp, self.fn) < 0:
            raise ValidationError("confusion matrix counts must be non-negative")

    @property
    def total(self) -> int:
        return self.tp + self.tn + self.fp + self.fn

    def __add__(self, other: "ConfusionMatrix") -> "ConfusionMatrix":
        # Per-shard matrices sum, so confusion() can run as a parallel reduction.
        return ConfusionMatrix(
            self.tp + other.tp, self.tn + other.tn, self.fp + other.fp, self.fn + other.fn
        )


@dataclass(frozen=True)
class MetricsReport:
    accuracy: float
    precision: float
    recall: float
    f1: float
    mode: str
    zero_division: bool = False


def confusion(records: Iterable[PredictionRecord]) -> ConfusionMatrix:
    """Count records into a confusion matrix (order-independent)."""
    tp = tn = fp = fn = 0
    for rec in records:
        if rec.label not in (0, 1) or rec.pred not in (0, 1):
            raise ValidationError(f"label and pred must be 0 or 1, got record {rec}")
        if rec.label == 1:
            if rec.pred == 1:
                tp += 1
            else:
                fn += 1
        else:
            if rec.pred == 1:
                fp += 1
            else:
                tn += 1
    return ConfusionMatrix(tp, tn, fp, fn)


def _ratio(num: int | float, den: int | float) -> tuple[float, bool]:
    if den == 0:
        return 0.0, True
    return num / den, False


def compute_metrics(m: ConfusionMatrix, mode: str = "positive_class") -> MetricsReport:
    """Accuracy, precision, recall, F1 for one averaging mode.

    Zero denominators contribute 0 and set the ``zero_division`` flag rather
    than raising; an empty matrix is an error.
    """
    if mode not in MODES:
        raise ValidationError(f"unknown metrics mode {mode!r} (expected one of {MODES})")
    if m.total == 0:
        raise ValidationError("cannot compute metrics for an empty confusion matrix")
    accuracy = (m.tp + m.tn) / m.total

    p1, z1 = _ratio(m.tp, m.tp + m.fp)
    r1, z2 = _ratio(m.tp, m.tp + m.fn)
    f1_1, z3 = _ratio(2 * p1 * r1, p1 + r1)
    if mode == "positive_class":
        return MetricsReport(accuracy, p1, r1, f1_1, mode, z1 or z2 or z3)

    p0, z4 = _ratio(m.tn, m.tn + m.fn)
    r0, z5 = _ratio(m.tn, m.tn + m.fp)
    f1_0, z6 = _ratio(2 * p0 * r0, p0 + r0)
    return MetricsReport(
        accuracy,
        (p0 + p1) / 2,
        (r0 + r1) / 2,
        (f1_0 + f1_1) / 2,
        mode,
        z1 or z2 or z3 or z4 or z5 or z6,
    )


def score_file(path: str | Path) -> tuple[ConfusionMatrix, dict[str, MetricsReport]]:
    """Score a prediction JSONL file in both averaging modes."""
    matrix = confusion(read_predictions(path))
    return matrix, {mode: compute_metrics(matrix, mode) for mode in MODES}


def round_half_up(value: float, places: int = 2) -> float:
    """Round for display the way published tables do (0.005 -> 0.01)."""
    q = Decimal(10) ** -places
    return float(Decimal(repr(value)).quantize(q, rounding=ROUND_HALF_UP))


def format_table_row(name: str, m: ConfusionMatrix, report: MetricsReport) -> str:
    """One display row: counts plus rounded F1, like published results tables."""
    return (
        f"{name}\tTP={m.tp}\tTN={m.tn}\tFP={m.fp}\tFN={m.fn}\t"
        f"F1={round_half_up(report.f1):.2f}"
    )
