"""Exception types raised across the chant pipeline.

Every error derives from ChantError so callers can catch the whole
family at once.  The synthesis driver annotates the pipeline stage on
the way out via the ``stage`` attribute.
"""

from __future__ import annotations


class ChantError(Exception):
    """Base class for all errors raised by this package."""

    #: pipeline stage name, filled in by the synthesis driver
    stage: str | None = None


class UnsupportedCodePoint(ChantError):
    """Input contains a code point the engine does not accept."""

    def __init__(self, position: int, char: str):
        self.position = position
        self.char = char
        super().__init__(
            f"unsupported code point U+{ord(char):04X} at position {position}"
        )


class UnknownCharacter(ChantError):
    """A character in romanized input matches no alphabet letter."""

    def __init__(self, position: int, char: str):
        self.position = position
        self.char = char
        super().__init__(f"no letter matches {char!r} at position {position}")


class UnknownLetter(ChantError):
    """A string was looked up that is not a letter of the alphabet."""

    def __init__(self, text: str):
        self.text = text
        super().__init__(f"{text!r} is not a letter of the alphabet")


class NoVowelInWord(ChantError):
    """A word contains no vowel and cannot form a syllabic unit."""

    def __init__(self, word_index: int, word_text: str = ""):
        self.word_index = word_index
        self.word_text = word_text
        shown = f" {word_text!r}" if word_text else ""
        super().__init__(f"word {word_index}{shown} has no vowel")


class MalformedTail(ChantError):
    """A word ends or continues in a shape no splitting rule covers."""

    def __init__(self, word_index: int, detail: str):
        self.word_index = word_index
        self.detail = detail
        super().__init__(f"word {word_index}: {detail}")


class NoMatchingMetre(ChantError):
    """No metre record matches the verse's syllable counts/patterns."""

    def __init__(self, counts, patterns=None):
        self.counts = tuple(counts)
        self.patterns = tuple(patterns) if patterns is not None else None
        super().__init__(f"no metre matches syllable counts {list(self.counts)}")


class MetreDbError(ChantError):
    """A metre database file is malformed."""


class PitchArrayOverrun(ChantError):
    """A quarter has more units than its metre's pitch array."""

    def __init__(self, quarter: int, n_units: int, n_pitches: int):
        self.quarter = quarter
        super().__init__(
            f"quarter {quarter + 1} has {n_units} units but the pitch "
            f"array holds only {n_pitches}"
        )


class ClipUnavailable(ChantError):
    """The clip store has no recording for a requested unit."""

    def __init__(self, unit_text: str, weight_tag: str):
        self.unit_text = unit_text
        self.weight_tag = weight_tag
        super().__init__(f"no clip for unit {unit_text!r} ({weight_tag})")


class BadWav(ChantError):
    """A WAV file could not be read in the supported format."""

    def __init__(self, path, reason: str):
        self.path = path
        self.reason = reason
        super().__init__(f"{path}: {reason}")


class SampleRateMismatch(ChantError):
    """Clips with different sample rates were concatenated."""

    def __init__(self, rates):
        self.rates = tuple(rates)
        super().__init__(f"cannot concatenate clips at rates {sorted(set(rates))}")


class EmptyVerse(ChantError):
    """The input text contains no verse material."""

    def __init__(self):
        super().__init__("verse text is empty")
