"""Exception types shared across the package."""

from __future__ import annotations


class SentiqError(Exception):
    """Base class for all errors raised by this package."""


class CorpusError(SentiqError):
    """Malformed or inconsistent tweet/price input data."""


class LexiconError(SentiqError):
    """Malformed sentiment lexicon file."""


class AlignmentError(SentiqError):
    """Price series and daily signals do not cover the same days."""


class ModelFormatError(SentiqError):
    """Model file is not readable as a serialized Q-table."""


class ProfilerError(SentiqError):
    """Resource profiler misuse or unsupported platform."""


class ConfigError(SentiqError):
    """Bad run configuration (file or flag values)."""
