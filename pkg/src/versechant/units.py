"""Splitting words into syllabic units.

A unit is one vowel nucleus with the consonants chanted in the same
breath: an optional onset cluster, the nucleus, and an optional coda.
The split is lossless: concatenating unit texts word by word
reproduces the stream text exactly.
"""

from __future__ import annotations

from dataclasses import dataclass

from .alphabet import Letter, VowelLength, classify
from .errors import MalformedTail, NoVowelInWord
from .transliteration import LetterStream


@dataclass(frozen=True)
class Unit:
    pre_vowel: tuple[Letter, ...]
    vowel: Letter
    post_vowel: tuple[Letter, ...]
    word_final: bool

    @property
    def text(self) -> str:
        return "".join(
            letter.text
            for letter in (*self.pre_vowel, self.vowel, *self.post_vowel)
        )


def _has_vowel(letters, start: int, end: int) -> bool:
    return any(letters[i].is_vowel for i in range(start, end))


def _split_word(
    letters: tuple[Letter, ...], start: int, end: int, word_index: int
) -> list[Unit]:
    units: list[Unit] = []
    i = start
    while i < end:
        if not _has_vowel(letters, i, end):
            if not units:
                word = "".join(l.text for l in letters[start:end])
                raise NoVowelInWord(word_index, word)
            # a unit already closed, yet letters remain with no nucleus
            raise MalformedTail(word_index, "letters after the last unit have no vowel")

        # onset: everything up to the nucleus
        pre: list[Letter] = []
        while not letters[i].is_vowel:
            if letters[i].is_tail_marker:
                raise MalformedTail(
                    word_index, f"{letters[i].text!r} cannot start a unit"
                )
            pre.append(letters[i])
            i += 1

        nucleus = letters[i]
        i += 1
        # a + i / a + u written as separate letters fuse to the diphthong
        if nucleus.text == "a" and i < end and letters[i].text in ("i", "u"):
            nucleus = classify("a" + letters[i].text)
            i += 1

        post: list[Letter] = []
        if not _has_vowel(letters, i, end):
            # no nucleus remains: every trailing letter joins this coda,
            # though nothing may follow a tail marker
            post = list(letters[i:end])
            for letter in post[:-1]:
                if letter.is_tail_marker:
                    raise MalformedTail(
                        word_index,
                        f"{letter.text!r} must end its word",
                    )
            i = end
        else:
            k1 = letters[i]
            k2 = letters[i + 1] if i + 1 < end else None
            k3 = letters[i + 2] if i + 2 < end else None
            if k1.is_tail_marker:
                # ṃ ḥ z f close the unit immediately
                post = [k1]
                i += 1
            elif k1.is_vowel:
                post = []  # hiatus: next unit starts at the vowel
            elif k2 is not None and k2.is_vowel:
                post = []  # single consonant belongs to the next unit
            elif k1.text == "r":
                # r after the nucleus stays in this unit; it carries the
                # following consonant along unless a vowel comes right after
                if k3 is not None and not k3.is_vowel:
                    post = [k1, k2]
                    i += 2
                else:
                    post = [k1]
                    i += 1
            else:
                pair = (k1.text, k2.text)
                if pair in (("j", "ñ"), ("k", "ṣ")):
                    post = []  # jñ and kṣ move whole to the next unit
                elif nucleus.length is VowelLength.SHORT and (
                    pair in (("p", "r"), ("b", "r"), ("k", "r")) or k1.text == "h"
                ):
                    post = []  # light clusters leave a short nucleus open
                else:
                    post = [k1]
                    i += 1

        units.append(
            Unit(tuple(pre), nucleus, tuple(post), word_final=(i == end))
        )
    return units


def split_into_units(stream: LetterStream) -> list[Unit]:
    """Split every word of the stream into syllabic units, in order."""
    units: list[Unit] = []
    for word_index, (start, end) in enumerate(stream.word_spans()):
        units.extend(_split_word(stream.letters, start, end, word_index))
    return units
