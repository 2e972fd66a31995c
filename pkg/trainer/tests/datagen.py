"""Synthetic labeled data for trainer tests: trivially separable two-class
sentences over a tiny fixed vocabulary."""

import json
import random

WORDS = ["the", "a", "cat", "dog", "bird", "sits", "runs", "here", "there", "now", "then"]
VOCAB = list(
    dict.fromkeys(  # dedupe: single letters double as words
        ["[PAD]", "[UNK]", "[CLS]", "[SEP]", "[MASK]"]
        + list("abcdefghijklmnopqrstuvwxyz")
        + WORDS
        + ["good", "bad"]
    )
)


def synthetic_examples(n: int, seed: int = 0) -> list[dict]:
    """Label 1 sentences contain 'good', label 0 sentences contain 'bad'."""
    rng = random.Random(seed)
    examples = []
    for i in range(n):
        label = i % 2
        marker = "good" if label else "bad"
        words = [rng.choice(WORDS) for _ in range(rng.randint(3, 6))]
        words.insert(rng.randrange(len(words) + 1), marker)
        examples.append({"text": " ".join(words), "label": label})
    return examples


def write_examples(path, examples) -> None:
    with open(path, "w", encoding="utf-8") as f:
        for ex in examples:
            f.write(json.dumps(ex) + "\n")
