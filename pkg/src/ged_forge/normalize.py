"""Pure text transforms used by the cleaning stages.

Unicode-to-ASCII folding, whitespace collapsing, ASCII lowercasing,
contraction expansion, and punctuation stripping.  All functions are pure
and idempotent; ``expand_contractions`` is idempotent for any table whose
expansions contain no table keys (the shipped table qualifies: every
expansion is apostrophe-free while every key contains one).
"""

from __future__ import annotations

import re
import string
import unicodedata
from dataclasses import dataclass, field
from importlib import resources
from pathlib import Path

from .errors import ValidationError

# Punctuation variants without a compatibility decomposition: NFKD leaves
# them alone, so they are mapped by hand before folding.
_PUNCT_VARIANTS = str.maketrans(
    {
        "‘": "'",  # left single quote
        "’": "'",  # right single quote
        "‚": "'",  # low single quote
        "‛": "'",  # reversed single quote
        "ʼ": "'",  # modifier letter apostrophe
        "´": "'",  # acute accent used as apostrophe
        "“": '"',  # left double quote
        "”": '"',  # right double quote
        "„": '"',  # low double quote
        "‟": '"',  # reversed double quote
        "«": '"',  # left guillemet
        "»": '"',  # right guillemet
        "‐": "-",  # hyphen
        "‑": "-",  # non-breaking hyphen
        "‒": "-",  # figure dash
        "–": "-",  # en dash
        "—": "-",  # em dash
        "―": "-",  # horizontal bar
        "−": "-",  # minus sign
        "⁄": "/",  # fraction slash
        "•": "*",  # bullet
        "·": "*",  # middle dot
    }
)

_ASCII_LOWER = str.maketrans(string.ascii_uppercase, string.ascii_lowercase)
_PUNCT_TO_SPACE = str.maketrans({c: " " for c in string.punctuation})


def fold_ascii(s: str) -> str:
    """Map text onto its closest ASCII form.

    Punctuation variants (curly quotes, dashes) become their ASCII
    equivalents, characters with a compatibility decomposition are reduced
    to their base form, and anything still outside ASCII is dropped.
    """
    s = s.translate(_PUNCT_VARIANTS)
    s = unicodedata.normalize("NFKD", s)
    return s.encode("ascii", "ignore").decode("ascii")


def collapse_spaces(s: str) -> str:
    """Trim the ends and squeeze every whitespace run to one ASCII space."""
    return " ".join(s.split())


def lowercase(s: str) -> str:
    """Lower ASCII letters only; everything else passes through."""
    return s.translate(_ASCII_LOWER)


def strip_punctuation(s: str) -> str:
    """Replace ASCII punctuation with spaces, then collapse.

    Used for punctuation-insensitive comparison; callers keep the original.
    """
    return collapse_spaces(s.translate(_PUNCT_TO_SPACE))


@dataclass
class ContractionTable:
    """Ordered map from contraction surface form to apostrophe-free expansion."""

    entries: dict[str, str]
    _pattern: re.Pattern | None = field(default=None, repr=False, compare=False)
    _expansions: dict[str, str] = field(default_factory=dict, repr=False, compare=False)
    _apostrophes_only: bool = field(default=False, repr=False, compare=False)

    def __post_init__(self) -> None:
        for key, expansion in self.entries.items():
            folded = key.lower()
            if folded in self._expansions:
                raise ValidationError(f"contraction key {key!r} duplicates another up to case")
            if "'" in expansion:
                raise ValidationError(
                    f"expansion for {key!r} contains an apostrophe: {expansion!r}"
                )
            self._expansions[folded] = expansion
        if self._expansions:
            # Longest-first alternation; lookarounds keep matches whole-token
            # ("scan't" must not match "can't").
            keys = sorted(self._expansions, key=len, reverse=True)
            alternation = "|".join(re.escape(k) for k in keys)
            self._pattern = re.compile(
                rf"(?<![a-zA-Z0-9_'])(?:{alternation})(?![a-zA-Z0-9_'])", re.IGNORECASE
            )
        self._apostrophes_only = all("'" in k for k in self._expansions)

    def expand(self, s: str) -> str:
        if self._pattern is None:
            return s
        if self._apostrophes_only and "'" not in s:
            return s
        return self._pattern.sub(lambda m: self._expansions[m.group(0).lower()], s)


def expand_contractions(s: str, table: ContractionTable) -> str:
    """Replace every whole-token contraction with its expansion.

    Assumes the pipeline already lowercased ``s``; matching is
    case-insensitive anyway, but replacements come out lowercase.
    """
    return table.expand(s)


def load_contractions(path: str | Path | None = None) -> ContractionTable:
    """Load a contraction table (``key<TAB>expansion`` per line, ``#`` comments).

    With no path, loads the table shipped with the package.
    """
    if path is None:
        text = (resources.files("ged_forge") / "data" / "contractions.tsv").read_text("utf-8")
        origin = "builtin contraction table"
    else:
        path = Path(path)
        if not path.is_file():
            raise ValidationError(f"cannot read contraction table: {path}")
        text = path.read_text("utf-8")
        origin = str(path)
    entries: dict[str, str] = {}
    for lineno, line in enumerate(text.splitlines(), 1):
        line = line.strip()
        if not line or line.startswith("#"):
            continue
        fields = line.split("\t")
        if len(fields) != 2 or not fields[0] or not fields[1]:
            raise ValidationError(f"{origin}:{lineno}: expected 'key<TAB>expansion'")
        entries[fields[0]] = fields[1]
    return ContractionTable(entries)
