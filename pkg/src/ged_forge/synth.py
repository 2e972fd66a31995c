"""Synthetic pair-corpus generator with known per-stage outcomes.

Each generated pair is constructed to be dropped at one specific cleaning
stage (or to survive), so ``generate`` can emit the exact stage report the
pipeline must produce.  Construction rules keep categories from bleeding
into one another:

  exact_dup          byte-identical pair                     -> stage 1
  fold_only          differs only by accented characters     -> stage 2
  space_only         differs only by extra whitespace        -> stage 3
  case_only          differs only by letter case             -> stage 4
  contraction_only   contraction vs its expansion            -> stage 5
  punct_only         differs only by inserted punctuation    -> stage 6
  in_band            true edits, distance and length in band -> survives
  out_of_band        distance, length, or normalized
                     distance outside the band               -> stage 7 or 8

Survivor and distance-violating pairs are built from two disjoint lowercase
alphabets (base sentences from one, edits from the other) and every edit
count is verified with the edit-distance routine; every emitted pair is
additionally replayed through a local copy of the stage predicates, so a
construction bug raises at generation time instead of corrupting the
expected report.  ``out_of_band`` rotates through five sub-kinds (distance
below band, above band, over-long sentences, normalized distance below and
above band), always including the boundary-adjacent cases.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import cycle
from typing import Iterator

from .corpus_io import SentencePair
from .editdist import levenshtein
from .errors import ValidationError
from .normalize import (
    ContractionTable,
    collapse_spaces,
    expand_contractions,
    fold_ascii,
    load_contractions,
    lowercase,
    strip_punctuation,
)
from .pipeline import FilterConfig, StageReport, build_report

CATEGORIES = (
    "exact_dup",
    "fold_only",
    "space_only",
    "case_only",
    "contraction_only",
    "punct_only",
    "in_band",
    "out_of_band",
)

DEFAULT_PROPORTIONS = {
    "exact_dup": 0.15,
    "fold_only": 0.05,
    "space_only": 0.10,
    "case_only": 0.10,
    "contraction_only": 0.05,
    "punct_only": 0.10,
    "in_band": 0.30,
    "out_of_band": 0.15,
}

_BASE_ALPHABET = "abcdefghijklm"
_EDIT_ALPHABET = "nopqrstuvwxyz"  # disjoint from base: substitutions never match
_ACCENTS = {
    "a": "á",
    "c": "ç",
    "d": "ď",
    "e": "é",
    "g": "ğ",
    "h": "ĥ",
    "i": "í",
    "k": "ķ",
    "l": "ļ",
    "m": "ḿ",
}
_SAFE_PUNCT = ",.!?;:"  # no apostrophe: must not look like a contraction


@dataclass(frozen=True)
class SynthSpec:
    """Row count, per-category proportions (must sum to 1), and RNG seed."""

    rows: int
    proportions: dict[str, float] = field(default_factory=lambda: dict(DEFAULT_PROPORTIONS))
    seed: int = 0

    def __post_init__(self) -> None:
        if self.rows < 0:
            raise ValidationError("rows must be non-negative")
        unknown = set(self.proportions) - set(CATEGORIES)
        if unknown:
            raise ValidationError(f"unknown synth categories: {sorted(unknown)}")
        if any(p < 0 for p in self.proportions.values()):
            raise ValidationError("proportions must be non-negative")
        total = sum(self.proportions.values())
        if self.rows and abs(total - 1.0) > 1e-9:
            raise ValidationError(f"proportions must sum to 1, got {total}")


def category_counts(spec: SynthSpec) -> dict[str, int]:
    """Largest-remainder apportionment of rows to categories (deterministic)."""
    shares = {c: spec.rows * spec.proportions.get(c, 0.0) for c in CATEGORIES}
    counts = {c: int(shares[c]) for c in CATEGORIES}
    leftover = spec.rows - sum(counts.values())
    by_remainder = sorted(CATEGORIES, key=lambda c: shares[c] - counts[c], reverse=True)
    for c in by_remainder[:leftover]:
        counts[c] += 1
    return counts


def _expected_stage(
    s: str, t: str, config: FilterConfig, table: ContractionTable
) -> int | None:
    """Local replay of the stage predicates, used to validate constructions."""
    if s == t:
        return 1
    s, t = fold_ascii(s), fold_ascii(t)
    if s == t:
        return 2
    s, t = collapse_spaces(s), collapse_spaces(t)
    if s == t:
        return 3
    s, t = lowercase(s), lowercase(t)
    if s == t:
        return 4
    s, t = expand_contractions(s, table), expand_contractions(t, table)
    if s == t:
        return 5
    if strip_punctuation(s) == strip_punctuation(t):
        return 6
    if len(s) > config.max_sentence_len or len(t) > config.max_sentence_len:
        return 7
    result = levenshtein(s, t, bound=config.lev_max)
    if result.exceeded or result.distance < config.lev_min:
        return 7
    norm = result.distance / max(len(s), len(t))
    if not config.norm_min <= norm <= config.norm_max:
        return 8
    return None


def _sentence(rng: random.Random, length: int) -> str:
    """Random sentence of exactly ``length`` chars: base-alphabet words,
    single spaces, no leading/trailing space."""
    if length < 1:
        raise ValidationError(f"sentence length must be >= 1, got {length}")
    parts: list[str] = []
    size = 0
    while size < length + 1:
        word = "".join(rng.choice(_BASE_ALPHABET) for _ in range(rng.randint(3, 7)))
        parts.append(word)
        size += len(word) + 1
    s = " ".join(parts)[:length]
    if s.endswith(" "):
        s = s[:-1] + rng.choice(_BASE_ALPHABET)
    return s


def _letter_positions(s: str) -> list[int]:
    return [i for i, c in enumerate(s) if c != " "]


def _edit_pair(rng: random.Random, k: int, length: int) -> tuple[str, str]:
    """Pair of ``length``-char sentences at edit distance exactly ``k``.

    Substitutes k letter positions with foreign-alphabet letters; alignment
    shifts can in rare cases shorten the distance, so the result is verified
    and regenerated until exact.
    """
    for _ in range(100):
        t = _sentence(rng, length)
        positions = _letter_positions(t)
        if len(positions) < k:
            continue
        chars = list(t)
        for pos in rng.sample(positions, k):
            chars[pos] = rng.choice(_EDIT_ALPHABET)
        s = "".join(chars)
        if levenshtein(s, t).distance == k:
            return s, t
    raise ValidationError(f"could not construct a distance-{k} pair of length {length}")


def _min_len_for_edits(k: int) -> int:
    # Words are 3-7 chars, so letters make up >= ~3/4 of a sentence; 3k/2
    # leaves comfortable room for k substitution sites.
    return max(4, (3 * k + 1) // 2)


def _in_band_length_range(k: int, config: FilterConfig) -> tuple[int, int] | None:
    """Lengths L where a distance-k pair passes both stage 7 and stage 8.

    Bounds are refined with float comparisons so they agree exactly with the
    pipeline's ``norm_min <= k/L <= norm_max`` checks.
    """
    lo = max(_min_len_for_edits(k), k)
    hi = config.max_sentence_len
    while lo <= hi and k / lo > config.norm_max:
        lo += 1
    while hi >= lo and k / hi < config.norm_min:
        hi -= 1
    if lo > hi:
        return None
    return lo, hi


class _Generator:
    def __init__(self, spec: SynthSpec, config: FilterConfig, table: ContractionTable):
        self.rng = random.Random(spec.seed)
        self.config = config
        self.table = table
        self._boundary_done: set[str] = set()
        in_band = self._feasible_in_band_programs()
        self._in_band_programs: Iterator[tuple[int, int, int]] | None = (
            cycle(in_band) if in_band else None
        )
        self._out_of_band_programs = cycle(self._feasible_out_of_band_programs())

    # -- construction helpers ------------------------------------------------

    def _base(self, lo: int = 20, hi: int = 70) -> str:
        return _sentence(self.rng, self.rng.randint(lo, hi))

    def _checked(self, s: str, t: str, stage: int | None) -> tuple[SentencePair, int | None]:
        actual = _expected_stage(s, t, self.config, self.table)
        if actual != stage:
            raise ValidationError(
                f"synth construction error: pair {(s, t)!r} drops at stage "
                f"{actual}, wanted {stage}"
            )
        return SentencePair(s, t), stage

    def exact_dup(self) -> tuple[SentencePair, int | None]:
        t = self._base()
        return self._checked(t, t, 1)

    def fold_only(self) -> tuple[SentencePair, int | None]:
        while True:
            t = self._base()
            spots = [i for i, c in enumerate(t) if c in _ACCENTS]
            if spots:
                break
        chars = list(t)
        for pos in self.rng.sample(spots, self.rng.randint(1, min(3, len(spots)))):
            chars[pos] = _ACCENTS[chars[pos]]
        return self._checked("".join(chars), t, 2)

    def space_only(self) -> tuple[SentencePair, int | None]:
        t = self._base()
        s = t
        ops = self.rng.sample(["lead", "trail", "double"], self.rng.randint(1, 3))
        if "double" in ops:
            gaps = [i for i, c in enumerate(s) if c == " "]
            if gaps:
                pos = self.rng.choice(gaps)
                s = s[:pos] + " " + s[pos:]
        if "lead" in ops:
            s = " " * self.rng.randint(1, 2) + s
        if "trail" in ops:
            s = s + " " * self.rng.randint(1, 2)
        if s == t:  # "double" alone on a one-word sentence: force a lead space
            s = " " + s
        return self._checked(s, t, 3)

    def case_only(self) -> tuple[SentencePair, int | None]:
        t = self._base()
        positions = _letter_positions(t)
        chars = list(t)
        for pos in self.rng.sample(positions, self.rng.randint(1, 4)):
            chars[pos] = chars[pos].upper()
        return self._checked("".join(chars), t, 4)

    def contraction_only(self) -> tuple[SentencePair, int | None]:
        key = self.rng.choice(list(self.table.entries))
        expansion = self.table.entries[key].lower()
        words = self._base(20, 40).split(" ")
        pos = self.rng.randrange(len(words) + 1)
        t = " ".join(words[:pos] + [expansion] + words[pos:])
        s = " ".join(words[:pos] + [key.lower()] + words[pos:])
        return self._checked(s, t, 5)

    def punct_only(self) -> tuple[SentencePair, int | None]:
        t = self._base()
        word_ends = [i for i, c in enumerate(t) if c == " "] + [len(t)]
        chosen = self.rng.sample(word_ends, self.rng.randint(1, min(3, len(word_ends))))
        s = t
        for pos in sorted(chosen, reverse=True):
            s = s[:pos] + self.rng.choice(_SAFE_PUNCT) + s[pos:]
        return self._checked(s, t, 6)

    # -- band categories -----------------------------------------------------

    def _exact_norm_edge(self, value: float) -> tuple[int, int] | None:
        """(k, L) with k/L landing exactly on a normalized-distance bound."""
        frac = Fraction(str(value))
        p, q = frac.numerator, frac.denominator
        if p == 0:
            return None
        m_lo = -(-max(self.config.lev_min, 1) // p)  # ceil division
        m_hi = min(self.config.lev_max // p, self.config.max_sentence_len // q)
        for m in range(m_lo, m_hi + 1):
            k, length = p * m, q * m
            if length >= _min_len_for_edits(k) and k / length == value:
                return k, length
        return None

    def _feasible_in_band_programs(self) -> list[tuple[int, int, int]]:
        """(k, L_lo, L_hi) programs: band edges, norm edges, then free picks."""
        cfg = self.config
        programs: list[tuple[int, int, int]] = []
        for k in (max(cfg.lev_min, 1), cfg.lev_max):
            if (span := _in_band_length_range(k, cfg)) is not None:
                programs.append((k, span[0], span[1]))
        for edge in (cfg.norm_min, cfg.norm_max):
            if (pair := self._exact_norm_edge(edge)) is not None:
                programs.append((pair[0], pair[1], pair[1]))
        free = [
            (k, span[0], span[1])
            for k in range(max(cfg.lev_min, 1), cfg.lev_max + 1)
            if (span := _in_band_length_range(k, cfg)) is not None
        ]
        if not free:
            return []
        # One free slot per fixed program keeps variety roughly half/half.
        programs += self.rng.choices(free, k=max(len(programs), 4))
        return programs

    def in_band(self) -> tuple[SentencePair, int | None]:
        if self._in_band_programs is None:
            raise ValidationError(f"no in-band pair is constructible under {self.config}")
        k, lo, hi = next(self._in_band_programs)
        s, t = _edit_pair(self.rng, k, self.rng.randint(lo, hi))
        return self._checked(s, t, None)

    def _feasible_out_of_band_programs(self) -> list[str]:
        cfg = self.config
        programs = []
        if cfg.lev_min >= 2 and _min_len_for_edits(cfg.lev_min - 1) <= cfg.max_sentence_len:
            programs.append("too_close")  # distance in [1, lev_min-1]
        programs.append("too_far")
        if _min_len_for_edits(max(cfg.lev_min, 1)) <= cfg.max_sentence_len + 1:
            programs.append("too_long")
        if self._norm_low_lengths() is not None:
            programs.append("norm_low")
        if self._norm_high_lengths() is not None:
            programs.append("norm_high")
        return programs

    def _norm_low_lengths(self) -> tuple[int, int, int] | None:
        """(k, L_lo, L_hi) giving distance in band but k/L below norm_min."""
        cfg = self.config
        k = max(cfg.lev_min, 1)
        if k > cfg.lev_max:
            return None
        lo = max(_min_len_for_edits(k), k)
        while lo <= cfg.max_sentence_len and k / lo >= cfg.norm_min:
            lo += 1
        if lo > cfg.max_sentence_len:
            return None
        return k, lo, cfg.max_sentence_len

    def _norm_high_lengths(self) -> tuple[int, int, int] | None:
        """(k, L_lo, L_hi) giving distance in band but k/L above norm_max."""
        cfg = self.config
        k = cfg.lev_max
        if k < 1:
            return None
        hi = cfg.max_sentence_len
        while hi >= 1 and k / hi <= cfg.norm_max:
            hi -= 1
        lo = max(_min_len_for_edits(k), k)
        if hi < lo:
            return None
        return k, lo, hi

    def _first(self, kind: str) -> bool:
        # The first pair of each sub-kind pins the boundary-adjacent value,
        # so any sufficiently large corpus exercises every band edge.
        if kind in self._boundary_done:
            return False
        self._boundary_done.add(kind)
        return True

    def out_of_band(self) -> tuple[SentencePair, int | None]:
        cfg = self.config
        kind = next(self._out_of_band_programs)
        if kind == "too_close":
            k = cfg.lev_min - 1 if self._first(kind) else self.rng.randint(1, cfg.lev_min - 1)
            length = self.rng.randint(_min_len_for_edits(k), cfg.max_sentence_len)
            s, t = _edit_pair(self.rng, k, length)
            return self._checked(s, t, 7)
        if kind == "too_far":
            # Appending n foreign characters makes the distance exactly n:
            # n insertions achieve it and the length difference forces it.
            t = self._base()
            extra = max(cfg.lev_max + 1, 2)
            if not self._first(kind):
                extra += self.rng.randint(0, 8)
            tail = "".join(self.rng.choice(_EDIT_ALPHABET) for _ in range(extra - 1))
            return self._checked(t + " " + tail, t, 7)
        if kind == "too_long":
            k = max(cfg.lev_min, 1)
            over = 1 if self._first(kind) else self.rng.randint(1, 15)
            s, t = _edit_pair(self.rng, k, cfg.max_sentence_len + over)
            return self._checked(s, t, 7)
        if kind == "norm_low":
            k, lo, hi = self._norm_low_lengths()
            length = lo if self._first(kind) else self.rng.randint(lo, hi)
            s, t = _edit_pair(self.rng, k, length)
            return self._checked(s, t, 8)
        assert kind == "norm_high"
        k, lo, hi = self._norm_high_lengths()
        length = hi if self._first(kind) else self.rng.randint(lo, hi)
        s, t = _edit_pair(self.rng, k, length)
        return self._checked(s, t, 8)


def generate(
    spec: SynthSpec,
    config: FilterConfig | None = None,
    table: ContractionTable | None = None,
) -> tuple[list[SentencePair], list[StageReport]]:
    """Generate a corpus plus the exact stage report the pipeline must emit."""
    if config is None:
        config = FilterConfig()
    if table is None:
        table = load_contractions()
    gen = _Generator(spec, config, table)
    counts = category_counts(spec)
    pairs: list[SentencePair] = []
    removed = [0] * 8
    for category in CATEGORIES:
        builder = getattr(gen, category)
        for _ in range(counts[category]):
            pair, stage = builder()
            pairs.append(pair)
            if stage is not None:
                removed[stage - 1] += 1
    gen.rng.shuffle(pairs)
    return pairs, build_report(removed, len(pairs))
