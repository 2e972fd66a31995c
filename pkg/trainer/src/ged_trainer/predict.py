"""Batch inference: writes the prediction JSONL the scorer consumes."""

from __future__ import annotations

import json
import logging
from pathlib import Path

import torch

from .data import make_loader, read_labeled
from .modeling import load_model

logger = logging.getLogger(__name__)


def predict(
    checkpoint: str | Path,
    data_path: str | Path,
    out_path: str | Path,
    batch_size: int = 32,
    max_length: int = 128,
) -> int:
    """Run the checkpoint over a labeled file; emit {text, label, pred} lines.

    Deterministic for a fixed checkpoint and data file: evaluation mode,
    no sampling, input order preserved.  Returns the number of records.
    """
    device = torch.device("cuda" if torch.cuda.is_available() else "cpu")
    model, tokenizer = load_model(str(checkpoint))
    model.to(device)
    model.eval()

    examples = read_labeled(data_path)
    loader = make_loader(examples, tokenizer, batch_size, max_length, shuffle=False)
    predictions: list[int] = []
    with torch.no_grad():
        for batch in loader:
            batch = {k: v.to(device) for k, v in batch.items()}
            logits = model(**batch).logits
            predictions.extend(int(p) for p in logits.argmax(dim=-1).cpu())

    count = 0
    with open(out_path, "w", encoding="utf-8") as f:
        for example, pred in zip(examples, predictions):
            row = {"text": example.text, "label": example.label, "pred": pred}
            f.write(json.dumps(row, ensure_ascii=False) + "\n")
            count += 1
    logger.info("wrote %d predictions -> %s", count, out_path)
    return count
