"""Console entry points: ged-train and ged-predict."""

from __future__ import annotations

import logging
import sys

import click

from .config import TrainConfig, load_freeze_spec
from .errors import TrainerError


def _setup_logging() -> None:
    logging.basicConfig(
        level=logging.INFO,
        format="%(asctime)s %(levelname)s %(name)s: %(message)s",
        stream=sys.stderr,
    )


@click.command()
@click.option("--train", "train_path", required=True, help="Labeled JSONL training file.")
@click.option("--val", "val_path", required=True, help="Labeled JSONL validation file.")
@click.option("--model", default="bert-base-uncased", show_default=True)
@click.option("--freeze", "freeze_path", default=None, help="File of parameter groups to freeze.")
@click.option("--out", "out_dir", required=True, help="Checkpoint directory.")
@click.option("--log", "log_path", default=None, help="Per-epoch JSONL log file.")
@click.option("--epochs", type=int, default=None)
@click.option("--batch-size", type=int, default=None)
@click.option("--learning-rate", type=float, default=None)
@click.option("--dropout", type=float, default=None)
@click.option("--weight-decay", type=float, default=None)
@click.option("--epsilon", type=float, default=None)
@click.option("--max-grad-norm", type=float, default=None)
@click.option("--max-length", type=int, default=None)
@click.option("--seed", type=int, default=None)
def train_main(
    train_path, val_path, model, freeze_path, out_dir, log_path,
    epochs, batch_size, learning_rate, dropout, weight_decay, epsilon,
    max_grad_norm, max_length, seed,
):
    """Fine-tune a sentence classifier on a labeled dataset."""
    _setup_logging()
    try:
        config = TrainConfig(model=model)
        overrides = {
            "epochs": epochs,
            "batch_size": batch_size,
            "learning_rate": learning_rate,
            "dropout": dropout,
            "weight_decay": weight_decay,
            "adam_epsilon": epsilon,
            "max_grad_norm": max_grad_norm,
            "max_length": max_length,
            "seed": seed,
        }
        for key, value in overrides.items():
            if value is not None:
                setattr(config, key, value)
        if freeze_path:
            config.freeze = load_freeze_spec(freeze_path)
        from .training import train

        train(train_path, val_path, config, out_dir, log_path)
    except TrainerError as e:
        raise click.ClickException(str(e)) from e


@click.command()
@click.option("--ckpt", "checkpoint", required=True, help="Checkpoint directory from ged-train.")
@click.option("--data", "data_path", required=True, help="Labeled JSONL file to predict on.")
@click.option("--out", "out_path", required=True, help="Prediction JSONL destination.")
@click.option("--batch-size", type=int, default=32, show_default=True)
@click.option("--max-length", type=int, default=128, show_default=True)
def predict_main(checkpoint, data_path, out_path, batch_size, max_length):
    """Write predictions for a labeled file using a trained checkpoint."""
    _setup_logging()
    try:
        from .predict import predict

        count = predict(checkpoint, data_path, out_path, batch_size, max_length)
    except TrainerError as e:
        raise click.ClickException(str(e)) from e
    click.echo(f"wrote {count} predictions to {out_path}")
