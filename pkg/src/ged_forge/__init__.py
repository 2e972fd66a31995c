"""Corpus cleaning and dataset construction for grammatical error detection."""

from .corpus_io import LabeledExample, PredictionRecord, SentencePair
from .dataset_builder import MixSpec, SplitSpec, build_mix, build_split
from .editdist import DistanceResult, length_difference, levenshtein, normalized_levenshtein
from .errors import CorpusIOError, GedForgeError, ValidationError
from .metrics import ConfusionMatrix, MetricsReport, compute_metrics, confusion, score_file
from .normalize import (
    ContractionTable,
    collapse_spaces,
    expand_contractions,
    fold_ascii,
    load_contractions,
    lowercase,
    strip_punctuation,
)
from .pipeline import FilterConfig, PipelineOutput, StageReport, run_pipeline
from .synth import SynthSpec, generate

__version__ = "0.1.0"

__all__ = [
    "ConfusionMatrix",
    "ContractionTable",
    "CorpusIOError",
    "DistanceResult",
    "FilterConfig",
    "GedForgeError",
    "LabeledExample",
    "MetricsReport",
    "MixSpec",
    "PipelineOutput",
    "PredictionRecord",
    "SentencePair",
    "SplitSpec",
    "StageReport",
    "SynthSpec",
    "ValidationError",
    "build_mix",
    "build_split",
    "collapse_spaces",
    "compute_metrics",
    "confusion",
    "expand_contractions",
    "fold_ascii",
    "generate",
    "length_difference",
    "levenshtein",
    "load_contractions",
    "lowercase",
    "normalized_levenshtein",
    "run_pipeline",
    "score_file",
    "strip_punctuation",
]
