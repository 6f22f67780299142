"""Shared fixtures: frozen oracle values, an independent spectral-peak
estimator, and seeded random verse generators for the property suites."""

from __future__ import annotations

import random

import numpy as np

from versechant.dsp import AudioClip

# The worked sample verse.  Quarter-1 unit and weight values below were
# fixed by hand before the pipeline existed and must never be edited to
# match the code.
SAMPLE_VERSE = (
    "vande gurūṇāṃ caraṇāravinde\n"
    "sandarśitasvātmasukhāvabodhe |\n"
    "janasya ye jāṅgalikāyamāne\n"
    "saṃsārahālāhalamohaśāntyai ||"
)

Q1_UNITS = ["van", "de", "gu", "rū", "ṇāṃ", "ca", "ra", "ṇā", "ra", "vin", "de"]
Q2_UNITS = ["san", "dar", "śi", "tas", "vāt", "ma", "su", "khā", "va", "bo", "dhe"]
Q3_UNITS = ["ja", "nas", "ya", "ye", "jāṅ", "ga", "li", "kā", "ya", "mā", "ne"]
Q4_UNITS = ["saṃ", "sā", "ra", "hā", "lā", "ha", "la", "mo", "ha", "śān", "tyai"]

Q1_V = [1, 1, 0, 1, 1, 0, 0, 1, 0, 1, 1]
Q1_T = [0, 1, 0, 1, 1, 0, 0, 1, 0, 0, 1]

# expected/actual beat totals for quarter 1, by the sum-of-(x+1) rule
Q1_TE = sum(Q1_V) + len(Q1_V)  # 18
Q1_TA = sum(Q1_T) + len(Q1_T)  # 16

ANUSTUP_Q13 = (0, 1, 1, 2, 2, 0, 1, 1)
ANUSTUP_Q24 = (0, 1, -1, 0, 0, 1, 1, 1)
VAJRA_Q13 = (0, 0, 1, 2, 2, 0, 0, 1, -1, 0, -1)
VAJRA_Q24 = (0, 1, 0, 0, 0, 0, -1, 0, 1, 1, 1)


def fft_peak_hz(samples: np.ndarray, rate: int) -> float:
    """Spectral peak of a signal, independent of the dsp module.

    Hann window, magnitude rfft, argmax, then parabolic refinement of
    the peak bin for sub-bin resolution.
    """
    x = samples.astype(np.float64) * np.hanning(len(samples))
    mag = np.abs(np.fft.rfft(x))
    k = int(np.argmax(mag))
    peak = float(k)
    if 0 < k < len(mag) - 1:
        a, b, c = np.log(mag[k - 1 : k + 2] + 1e-12)
        denom = a - 2 * b + c
        if denom != 0:
            peak = k + 0.5 * (a - c) / denom
    return peak * rate / len(samples)


def sine_clip(
    freq: float, seconds: float = 1.0, rate: int = 44100, amp: float = 0.6
) -> AudioClip:
    t = np.arange(int(round(seconds * rate))) / rate
    samples = (amp * 32767.0 * np.sin(2.0 * np.pi * freq * t)).astype(np.int16)
    return AudioClip(samples, rate)


# ---------------------------------------------------------------------------
# Random verse material.  Words are strings of onset+vowel groups with
# optional ṃ/ḥ after a vowel and an optional consonant tail, drawn from
# clusters that occur in real verse, so every generated word splits.

VOWELS = [
    "a", "ā", "i", "ī", "u", "ū", "r̥", "r̥̄", "l̥", "e", "ai", "o", "au",
]
SINGLE_ONSETS = [
    "k", "kh", "g", "gh", "c", "ch", "j", "jh", "ṭ", "ḍ", "ṇ",
    "t", "th", "d", "dh", "n", "p", "ph", "b", "bh", "m",
    "y", "r", "l", "v", "ś", "ṣ", "s", "h",
]
INITIAL_CLUSTERS = [
    "pr", "br", "kr", "tr", "dr", "gr", "śr", "sn", "sm", "st", "sv",
    "tv", "tm", "dv", "dy", "vy", "jñ", "kṣ", "hm", "hn", "śv", "sth",
]
MEDIAL_CLUSTERS = INITIAL_CLUSTERS + [
    "nt", "nd", "mp", "mb", "rk", "rt", "rm", "ry", "tk", "ght", "tsn",
]
MARKERS = ["ṃ", "ḥ"]
FINAL_CONSONANTS = ["m", "t", "n", "d", "s", "r"]


def random_word(rng: random.Random) -> str:
    parts = []
    n_groups = rng.randint(1, 4)
    ends_in_marker = False
    for g in range(n_groups):
        roll = rng.random()
        if g == 0:
            if roll < 0.75:
                parts.append(rng.choice(SINGLE_ONSETS))
            elif roll < 0.9:
                parts.append(rng.choice(INITIAL_CLUSTERS))
            # else vowel-initial word
        else:
            if roll < 0.65:
                parts.append(rng.choice(SINGLE_ONSETS))
            elif roll < 0.95 or ends_in_marker:
                parts.append(rng.choice(MEDIAL_CLUSTERS))
            # else hiatus: vowel straight after the previous group
        parts.append(rng.choice(VOWELS))
        ends_in_marker = rng.random() < 0.12
        if ends_in_marker:
            parts.append(rng.choice(MARKERS))
    if not ends_in_marker and rng.random() < 0.3:
        if rng.random() < 0.25:
            parts.append(rng.choice(MARKERS))
        else:
            parts.append(rng.choice(FINAL_CONSONANTS))
    return "".join(parts)


def random_text(rng: random.Random, max_words: int = 5) -> str:
    return " ".join(random_word(rng) for _ in range(rng.randint(1, max_words)))
