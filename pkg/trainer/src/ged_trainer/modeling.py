"""Model loading, dropout override, layer freezing, and parameter hashing."""

from __future__ import annotations

import hashlib
import logging

import torch
from torch import nn
from transformers import AutoModelForSequenceClassification, AutoTokenizer

from .errors import TrainerError

logger = logging.getLogger(__name__)


def load_model(name_or_path: str, num_labels: int = 2):
    """Load a sequence-classification model and its tokenizer by hub name or
    local checkpoint directory."""
    model = AutoModelForSequenceClassification.from_pretrained(
        name_or_path, num_labels=num_labels
    )
    tokenizer = AutoTokenizer.from_pretrained(name_or_path)
    return model, tokenizer


def override_dropout(model: nn.Module, p: float) -> list[str]:
    """Set dropout on the final encoder block's output and the classifier head.

    Other blocks keep the pretrained model's own rates.  Returns the module
    paths changed; raises if the architecture exposes neither target.
    """
    changed = []
    base = getattr(model, model.base_model_prefix, model)
    encoder = getattr(base, "encoder", None)
    layers = getattr(encoder, "layer", None)
    if layers is not None and len(layers) > 0:
        final_output = layers[-1].output
        if isinstance(getattr(final_output, "dropout", None), nn.Dropout):
            final_output.dropout.p = p
            changed.append(f"{model.base_model_prefix}.encoder.layer.{len(layers) - 1}.output.dropout")
    if isinstance(getattr(model, "dropout", None), nn.Dropout):
        model.dropout.p = p
        changed.append("dropout")
    elif hasattr(model, "classifier") and isinstance(
        getattr(model.classifier, "dropout", None), nn.Dropout
    ):
        model.classifier.dropout.p = p
        changed.append("classifier.dropout")
    if not changed:
        raise TrainerError(
            f"cannot place dropout {p} on {type(model).__name__}: no final encoder "
            "output dropout or classifier dropout found"
        )
    logger.info("dropout %.2f applied to: %s", p, ", ".join(changed))
    return changed


def resolve_freeze(model: nn.Module, names: list[str]) -> list[str]:
    """Freeze every parameter group named in ``names``.

    A name matches a parameter whose qualified name equals it or starts with
    it plus a dot, so "bert.encoder.layer.7" freezes the whole block.  Any
    name that resolves to nothing aborts the run.
    """
    frozen: list[str] = []
    parameters = dict(model.named_parameters())
    unresolved = []
    for name in names:
        matches = [
            pname for pname in parameters if pname == name or pname.startswith(name + ".")
        ]
        if not matches:
            unresolved.append(name)
            continue
        for pname in matches:
            parameters[pname].requires_grad = False
            frozen.append(pname)
    if unresolved:
        raise TrainerError(
            "freeze names not found in model: " + ", ".join(unresolved)
        )
    if frozen:
        logger.info("froze %d parameter tensors (%d groups)", len(frozen), len(names))
    return frozen


def parameter_hashes(model: nn.Module) -> dict[str, str]:
    """sha256 of every parameter tensor; equal hashes mean no update happened."""
    hashes = {}
    with torch.no_grad():
        for name, param in model.named_parameters():
            data = param.detach().cpu().contiguous().numpy().tobytes()
            hashes[name] = hashlib.sha256(data).hexdigest()
    return hashes
