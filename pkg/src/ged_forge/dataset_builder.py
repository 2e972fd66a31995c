"""Labeled train/validation splits and cleaned/discarded mixing batches.

The split takes incorrect sentences (column 0, label 0) from the top of the
corpus and corrected sentences (column 1, label 1) from the bottom, so no
row ever contributes both its sentences to a split and no row feeds both
training and validation.  Validation draws one sentence per row from the
middle rows: column 0 from the first half, column 1 from the second.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from typing import Sequence

from .corpus_io import LabeledExample, SentencePair
from .errors import ValidationError


@dataclass(frozen=True)
class SplitSpec:
    """Rows per training label plus middle rows reserved for validation."""

    train_per_class: int
    val_rows: int

    def __post_init__(self) -> None:
        if self.train_per_class < 0 or self.val_rows < 0:
            raise ValidationError("split sizes must be non-negative")


@dataclass(frozen=True)
class MixSpec:
    """Batch composition: sentences drawn from each pool, and the draw seed."""

    cleaned_count: int
    discarded_count: int
    seed: int = 0

    def __post_init__(self) -> None:
        if self.cleaned_count < 0 or self.discarded_count < 0:
            raise ValidationError("mix counts must be non-negative")


def build_split(
    corpus: Sequence[SentencePair], spec: SplitSpec
) -> tuple[list[LabeledExample], list[LabeledExample]]:
    """Build (train, val) from a cleaned corpus in row order.

    train: column 0 of the first ``train_per_class`` rows labeled 0, then
    column 1 of the last ``train_per_class`` rows labeled 1.  val: from the
    ``val_rows`` central middle rows, column 0 of the first half labeled 0
    and column 1 of the second half labeled 1.
    """
    n = len(corpus)
    need = 2 * spec.train_per_class + spec.val_rows
    if n < need:
        raise ValidationError(
            f"split needs {need} rows ({spec.train_per_class} per training label "
            f"+ {spec.val_rows} validation), corpus has {n}"
        )
    tpc = spec.train_per_class
    train = [LabeledExample(row.source, 0) for row in corpus[:tpc]]
    train += [LabeledExample(row.target, 1) for row in corpus[n - tpc :]]

    middle = corpus[tpc : n - tpc]
    start = (len(middle) - spec.val_rows) // 2
    mid = middle[start : start + spec.val_rows]
    half = spec.val_rows // 2
    val = [LabeledExample(row.source, 0) for row in mid[:half]]
    val += [LabeledExample(row.target, 1) for row in mid[half:]]
    return train, val


def _draw_balanced(
    pool: Sequence[LabeledExample], count: int, name: str, rng: random.Random
) -> list[LabeledExample]:
    """Draw ``count`` examples from a pool with equal label counts
    (label 1 gets the extra one when count is odd)."""
    if count == 0:
        return []
    zeros = [ex for ex in pool if ex.label == 0]
    ones = [ex for ex in pool if ex.label == 1]
    n0 = count // 2
    n1 = count - n0
    if len(zeros) < n0 or len(ones) < n1:
        raise ValidationError(
            f"{name} pool too small: need {n0} label-0 and {n1} label-1, "
            f"have {len(zeros)} and {len(ones)}"
        )
    return rng.sample(zeros, n0) + rng.sample(ones, n1)


def build_mix(
    cleaned: Sequence[LabeledExample],
    discarded: Sequence[LabeledExample],
    spec: MixSpec,
) -> list[LabeledExample]:
    """Compose a training batch from the cleaned and discarded pools.

    Each pool contributes a label-balanced draw; the combined batch order is
    shuffled.  All randomness comes from ``spec.seed``, so equal seeds give
    byte-identical batches.
    """
    rng = random.Random(spec.seed)
    batch = _draw_balanced(cleaned, spec.cleaned_count, "cleaned", rng)
    batch += _draw_balanced(discarded, spec.discarded_count, "discarded", rng)
    rng.shuffle(batch)
    return batch
