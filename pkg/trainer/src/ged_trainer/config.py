"""Training configuration.

Defaults are the published fine-tuning recipe: AdamW at learning rate 2e-5
with epsilon 1e-8 and weight decay 0.2, a linear scheduler with 0 warmup
steps over epochs x train-batches total steps, 4 epochs, and dropout 0.65 on
the final encoder block's output and the classifier head.  Everything is
overridable and echoed into the run log.
"""

from __future__ import annotations

from dataclasses import asdict, dataclass, field
from pathlib import Path

from .errors import TrainerError


@dataclass
class TrainConfig:
    model: str = "bert-base-uncased"
    dropout: float = 0.65
    learning_rate: float = 2e-5
    adam_epsilon: float = 1e-8
    weight_decay: float = 0.2
    epochs: int = 4
    warmup_steps: int = 0
    max_grad_norm: float = 1.0
    batch_size: int = 32
    max_length: int = 128
    seed: int = 42
    freeze: list[str] = field(default_factory=list)

    def __post_init__(self) -> None:
        if self.epochs < 1:
            raise TrainerError(f"epochs must be >= 1, got {self.epochs}")
        if self.batch_size < 1:
            raise TrainerError(f"batch_size must be >= 1, got {self.batch_size}")
        if not 0.0 <= self.dropout < 1.0:
            raise TrainerError(f"dropout must be in [0, 1), got {self.dropout}")

    def as_dict(self) -> dict:
        return asdict(self)


def load_freeze_spec(path: str | Path) -> list[str]:
    """Read a freeze list: one parameter-group name per line, '#' comments."""
    path = Path(path)
    if not path.is_file():
        raise TrainerError(f"cannot read freeze spec: {path}")
    names = []
    for raw in path.read_text("utf-8").splitlines():
        line = raw.strip()
        if line and not line.startswith("#"):
            names.append(line)
    return names
