"""Fine-tuning loop: AdamW + linear schedule + gradient clipping, with
per-epoch training/validation loss and accuracy logging."""

from __future__ import annotations

import json
import logging
import random
import time
from pathlib import Path

import torch
from transformers import get_linear_schedule_with_warmup

from .config import TrainConfig
from .data import make_loader, read_labeled
from .modeling import load_model, override_dropout, resolve_freeze

logger = logging.getLogger(__name__)


def _seed_everything(seed: int) -> None:
    random.seed(seed)
    torch.manual_seed(seed)
    if torch.cuda.is_available():
        torch.cuda.manual_seed_all(seed)


def _run_epoch(model, loader, device, optimizer=None, scheduler=None, max_grad_norm=None):
    """One pass over ``loader``; trains when an optimizer is given."""
    training = optimizer is not None
    model.train(training)
    total_loss = 0.0
    correct = 0
    seen = 0
    trainable = [p for p in model.parameters() if p.requires_grad]
    for batch in loader:
        batch = {k: v.to(device) for k, v in batch.items()}
        with torch.set_grad_enabled(training):
            output = model(**batch)
        n = batch["labels"].size(0)
        total_loss += output.loss.item() * n
        correct += int((output.logits.argmax(dim=-1) == batch["labels"]).sum())
        seen += n
        if training:
            output.loss.backward()
            if max_grad_norm:
                torch.nn.utils.clip_grad_norm_(trainable, max_grad_norm)
            optimizer.step()
            scheduler.step()
            optimizer.zero_grad()
    return total_loss / max(seen, 1), correct / max(seen, 1)


def train(
    train_path: str | Path,
    val_path: str | Path,
    config: TrainConfig,
    out_dir: str | Path,
    log_path: str | Path | None = None,
) -> list[dict]:
    """Fine-tune, checkpoint to ``out_dir``, and return the per-epoch records."""
    _seed_everything(config.seed)
    device = torch.device("cuda" if torch.cuda.is_available() else "cpu")
    logger.info("config: %s", json.dumps(config.as_dict()))

    model, tokenizer = load_model(config.model)
    model.to(device)
    override_dropout(model, config.dropout)
    resolve_freeze(model, config.freeze)

    train_examples = read_labeled(train_path)
    val_examples = read_labeled(val_path)
    logger.info("data: %d train, %d val", len(train_examples), len(val_examples))
    train_loader = make_loader(
        train_examples, tokenizer, config.batch_size, config.max_length,
        shuffle=True, seed=config.seed,
    )
    val_loader = make_loader(
        val_examples, tokenizer, config.batch_size, config.max_length, shuffle=False
    )

    trainable = [p for p in model.parameters() if p.requires_grad]
    optimizer = scheduler = None
    if trainable:
        optimizer = torch.optim.AdamW(
            trainable,
            lr=config.learning_rate,
            eps=config.adam_epsilon,
            weight_decay=config.weight_decay,
        )
        scheduler = get_linear_schedule_with_warmup(
            optimizer,
            num_warmup_steps=config.warmup_steps,
            num_training_steps=config.epochs * len(train_loader),
        )
    else:
        logger.warning("every parameter is frozen: running forward passes only")

    records = []
    for epoch in range(1, config.epochs + 1):
        start = time.perf_counter()
        train_loss, train_acc = _run_epoch(
            model, train_loader, device, optimizer, scheduler, config.max_grad_norm
        )
        val_loss, val_acc = _run_epoch(model, val_loader, device)
        record = {
            "epoch": epoch,
            "train_loss": train_loss,
            "train_accuracy": train_acc,
            "val_loss": val_loss,
            "val_accuracy": val_acc,
            "seconds": round(time.perf_counter() - start, 3),
        }
        records.append(record)
        logger.info(
            "epoch %d/%d: train loss %.4f acc %.4f | val loss %.4f acc %.4f (%.1fs)",
            epoch, config.epochs, train_loss, train_acc, val_loss, val_acc,
            record["seconds"],
        )

    out_dir = Path(out_dir)
    out_dir.mkdir(parents=True, exist_ok=True)
    model.save_pretrained(out_dir)
    tokenizer.save_pretrained(out_dir)
    (out_dir / "train_config.json").write_text(
        json.dumps(config.as_dict(), indent=2) + "\n", encoding="utf-8"
    )
    if log_path is not None:
        with open(log_path, "w", encoding="utf-8") as f:
            f.write(json.dumps({"config": config.as_dict()}) + "\n")
            for record in records:
                f.write(json.dumps(record) + "\n")
    logger.info("checkpoint saved to %s", out_dir)
    return records
