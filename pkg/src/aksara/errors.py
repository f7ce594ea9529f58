"""Exception hierarchy shared across the toolkit."""


class AksaraError(Exception):
    """Base class for all data-level errors raised by this package."""


class TableError(AksaraError):
    """A script table file is missing, malformed, or violates an invariant."""


class TransliterationError(AksaraError):
    """Strict transliteration hit an unmappable code point."""

    def __init__(self, index, char, reason):
        super().__init__(f"index {index}: {char!r}: {reason}")
        self.index = index
        self.char = char
        self.reason = reason


class SegmentationError(AksaraError):
    """Input word is not segmentable (non-phonemic codes, no vowel, ...)."""


class BpeError(AksaraError):
    """Invalid BPE training input or model usage."""


class BpeFormatError(BpeError):
    """A BPE model file could not be parsed."""

    def __init__(self, path, lineno, message):
        super().__init__(f"{path}:{lineno}: {message}")
        self.path = path
        self.lineno = lineno


class LexiconError(AksaraError):
    """Lexicon construction failed (missing model, dict, or pronunciation)."""


class MetricsError(AksaraError):
    """Scoring input is unusable (empty reference, id mismatch, ...)."""


class StatsError(AksaraError):
    """Corpus statistics requested on unusable input."""
