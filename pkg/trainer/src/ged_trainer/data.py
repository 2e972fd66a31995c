"""Labeled-dataset loading and batching.

Input is the toolkit's labeled JSONL format: one {"text": str, "label": 0|1}
object per line.  Records are kept in file order; batch shuffling is the
DataLoader's job and is driven by a seeded generator.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from pathlib import Path

import torch
from torch.utils.data import DataLoader, Dataset

from .errors import TrainerError


@dataclass(frozen=True)
class Example:
    text: str
    label: int


def read_labeled(path: str | Path) -> list[Example]:
    path = Path(path)
    if not path.is_file():
        raise TrainerError(f"cannot read labeled file: {path}")
    examples = []
    with open(path, encoding="utf-8") as f:
        for lineno, line in enumerate(f, 1):
            try:
                obj = json.loads(line)
                text, label = obj["text"], obj["label"]
            except (json.JSONDecodeError, KeyError, TypeError) as e:
                raise TrainerError(f"{path}:{lineno}: bad labeled record: {e}") from e
            if not isinstance(text, str) or label not in (0, 1):
                raise TrainerError(f"{path}:{lineno}: need a text string and a 0/1 label")
            examples.append(Example(text, int(label)))
    return examples


class LabeledDataset(Dataset):
    def __init__(self, examples: list[Example]):
        self.examples = examples

    def __len__(self) -> int:
        return len(self.examples)

    def __getitem__(self, idx: int) -> Example:
        return self.examples[idx]


def make_loader(
    examples: list[Example],
    tokenizer,
    batch_size: int,
    max_length: int,
    shuffle: bool,
    seed: int = 0,
) -> DataLoader:
    def collate(batch: list[Example]) -> dict[str, torch.Tensor]:
        encoded = tokenizer(
            [ex.text for ex in batch],
            padding=True,
            truncation=True,
            max_length=max_length,
            return_tensors="pt",
        )
        encoded["labels"] = torch.tensor([ex.label for ex in batch], dtype=torch.long)
        return encoded

    generator = torch.Generator()
    generator.manual_seed(seed)
    return DataLoader(
        LabeledDataset(examples),
        batch_size=batch_size,
        shuffle=shuffle,
        generator=generator if shuffle else None,
        collate_fn=collate,
    )
