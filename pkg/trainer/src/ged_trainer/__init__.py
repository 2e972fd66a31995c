"""Transformer fine-tuning harness for grammaticality classification."""

from .config import TrainConfig, load_freeze_spec
from .errors import TrainerError
from .modeling import load_model, override_dropout, parameter_hashes, resolve_freeze
from .predict import predict
from .training import train

__version__ = "0.1.0"

__all__ = [
    "TrainConfig",
    "TrainerError",
    "load_freeze_spec",
    "load_model",
    "override_dropout",
    "parameter_hashes",
    "predict",
    "resolve_freeze",
    "train",
]
