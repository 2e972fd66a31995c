"""Exception types shared across the toolkit."""


class GedForgeError(Exception):
    """Base class for all toolkit errors."""


class CorpusIOError(GedForgeError):
    """Unreadable input, failed write, or an unparseable record where the
    format demands strictness (labeled and prediction files)."""


class ValidationError(GedForgeError):
    """A value violates a documented invariant (bad label, bad config,
    insufficient rows for a split, ...)."""
