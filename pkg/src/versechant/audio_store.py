"""Per-unit audio clips: a deterministic synthetic voice and a
directory of recorded clips.

A clip request names a unit's text, its weight, and the beat length;
the clip handed back always lasts exactly (weight + 1) beats at the
engine sample rate, so the renderer can do beat arithmetic in frames.
Recorded clips are files named ``<unit_text>_<l|g>.wav``.
"""

from __future__ import annotations

import zlib
from abc import ABC, abstractmethod
from dataclasses import dataclass
from pathlib import Path

import numpy as np

from .alphabet import Category, Letter
from .dsp import (
    DEFAULT_SAMPLE_RATE,
    AudioClip,
    _to_int16,
    read_wav,
    resample,
    stretch_to_length,
)
from .errors import BadWav, ClipUnavailable
from .prosody import Weight
from .transliteration import normalize, tokenize

_NASALS = ("ṅ", "ñ", "ṇ", "n", "m")


@dataclass(frozen=True)
class ClipRequest:
    unit_text: str
    weight: Weight
    beat_seconds: float

    def __post_init__(self):
        if self.beat_seconds <= 0:
            raise ValueError("beat_seconds must be positive")

    def n_beats(self) -> int:
        return int(self.weight) + 1


class ClipProvider(ABC):
    """Source of unit clips; implementations cache within a render."""

    @abstractmethod
    def get_clip(self, request: ClipRequest) -> AudioClip: ...

    def clear_cache(self) -> None:
        pass


# ---------------------------------------------------------------------------
# Synthetic voice

def _seed(text: str) -> int:
    return zlib.crc32(text.encode("utf-8"))


def _envelope(n: int, attack: int, release: int) -> np.ndarray:
    env = np.ones(n)
    attack = min(attack, n // 2)
    release = min(release, n - attack)
    if attack:
        env[:attack] = np.linspace(0.0, 1.0, attack, endpoint=False)
    if release:
        env[n - release :] = np.linspace(1.0, 0.0, release)
    return env


def _vowel_tone(nucleus: Letter, n: int, rate: int, base_freq: float) -> np.ndarray:
    if n <= 0:
        return np.zeros(0)
    rng = np.random.default_rng(_seed(nucleus.text))
    # fundamental dominates so the spectral peak sits at base_freq
    amps = np.concatenate([[1.0], rng.uniform(0.08, 0.3, 3)])
    t = np.arange(n) / rate
    x = np.zeros(n)
    for k, amp in enumerate(amps, start=1):
        x += amp * np.sin(2.0 * np.pi * k * base_freq * t)
    return x * _envelope(n, int(0.015 * rate), int(0.030 * rate))


def _consonant_burst(letter: Letter, n: int, rate: int, base_freq: float) -> np.ndarray:
    if n <= 0:
        return np.zeros(0)
    rng = np.random.default_rng(_seed(letter.text))
    noise = rng.standard_normal(n)
    center = 500.0 + (_seed(letter.text) % 3000)
    freqs = np.fft.rfftfreq(n, 1.0 / rate)
    spec = np.fft.rfft(noise) * np.exp(-(((freqs - center) / 900.0) ** 2))
    x = np.fft.irfft(spec, n)
    peak = np.max(np.abs(x))
    if peak > 0:
        x /= peak
    voiced = letter.category is Category.SEMIVOWEL or letter.text in _NASALS
    if voiced:
        t = np.arange(n) / rate
        x = 0.5 * x + 0.5 * np.sin(2.0 * np.pi * base_freq * t)
    return 0.45 * x * _envelope(n, int(0.003 * rate), int(0.003 * rate))


def _consonant_run(letters, n: int, rate: int, base_freq: float) -> np.ndarray:
    each = n // len(letters)
    parts = []
    for k, letter in enumerate(letters):
        m = n - each * (len(letters) - 1) if k == len(letters) - 1 else each
        parts.append(_consonant_burst(letter, m, rate, base_freq))
    return np.concatenate(parts) if parts else np.zeros(0)


def synth_clip(
    request: ClipRequest,
    base_freq: float = 220.0,
    sample_rate: int = DEFAULT_SAMPLE_RATE,
) -> AudioClip:
    """Render a unit clip from scratch: noise-burst consonants around a
    harmonic vowel at base_freq.  Deterministic for a given request."""
    n = int(round(request.n_beats() * request.beat_seconds * sample_rate))
    stream = tokenize(request.unit_text)
    vowel_at = next(
        (i for i, letter in enumerate(stream.letters) if letter.is_vowel), None
    )
    if vowel_at is None:
        raise ValueError(f"unit text {request.unit_text!r} has no vowel")
    pre = stream.letters[:vowel_at]
    nucleus = stream.letters[vowel_at]
    post = stream.letters[vowel_at + 1 :]

    seg = int(round(0.06 * sample_rate))
    onset = min(len(pre) * seg, n // 4)
    coda = min(len(post) * seg, n // 4)
    parts = []
    if onset:
        parts.append(_consonant_run(pre, onset, sample_rate, base_freq))
    parts.append(_vowel_tone(nucleus, n - onset - coda, sample_rate, base_freq))
    if coda:
        parts.append(_consonant_run(post, coda, sample_rate, base_freq))
    x = np.concatenate(parts)
    peak = np.max(np.abs(x)) if len(x) else 0.0
    if peak > 0:
        x *= 0.75 / peak
    return AudioClip(_to_int16(x), sample_rate)


class SyntheticVoice(ClipProvider):
    def __init__(
        self, base_freq: float = 220.0, sample_rate: int = DEFAULT_SAMPLE_RATE
    ):
        self.base_freq = base_freq
        self.sample_rate = sample_rate
        self._cache: dict[tuple, AudioClip] = {}

    def get_clip(self, request: ClipRequest) -> AudioClip:
        key = (request.unit_text, request.weight, request.beat_seconds, self.base_freq)
        clip = self._cache.get(key)
        if clip is None:
            clip = synth_clip(request, self.base_freq, self.sample_rate)
            self._cache[key] = clip
        return clip

    def clear_cache(self) -> None:
        self._cache.clear()


# ---------------------------------------------------------------------------
# Recorded clips

class ClipDirectory(ClipProvider):
    """Clips read from ``<unit_text>_<l|g>.wav`` files in one directory.

    Files are conformed to the engine: resampled to the engine rate,
    then brought to the exact expected frame count.  A duration off by
    5% or more of the expected length is time-stretched; smaller gaps
    are padded or trimmed.
    """

    def __init__(self, directory: str | Path, sample_rate: int = DEFAULT_SAMPLE_RATE):
        self.directory = Path(directory)
        self.sample_rate = sample_rate
        self._index: dict[tuple[str, Weight], Path] = {}
        self._cache: dict[tuple, AudioClip] = {}
        for path in sorted(self.directory.glob("*.wav")):
            stem = path.stem
            if "_" not in stem:
                continue
            unit_text, _, tag = stem.rpartition("_")
            if tag == "l":
                weight = Weight.LAGHU
            elif tag == "g":
                weight = Weight.GURU
            else:
                continue
            self._index[(normalize(unit_text), weight)] = path

    def __len__(self) -> int:
        return len(self._index)

    def get_clip(self, request: ClipRequest) -> AudioClip:
        key = (request.unit_text, request.weight, request.beat_seconds)
        clip = self._cache.get(key)
        if clip is None:
            clip = self._load(request)
            self._cache[key] = clip
        return clip

    def clear_cache(self) -> None:
        self._cache.clear()

    def _load(self, request: ClipRequest) -> AudioClip:
        path = self._index.get((normalize(request.unit_text), request.weight))
        if path is None:
            raise ClipUnavailable(request.unit_text, request.weight.tag)
        clip = read_wav(path)
        if clip.n_frames == 0:
            raise BadWav(path, "clip holds no samples")
        if clip.sample_rate != self.sample_rate:
            clip = resample(clip, self.sample_rate)
        expected = int(round(request.n_beats() * request.beat_seconds * self.sample_rate))
        got = clip.n_frames
        if got == expected:
            return clip
        if abs(got - expected) / expected >= 0.05:
            return stretch_to_length(clip, expected)
        if got > expected:
            return AudioClip(clip.samples[:expected], self.sample_rate)
        pad = np.zeros(expected - got, dtype=np.int16)
        return AudioClip(np.concatenate([clip.samples, pad]), self.sample_rate)


def load_clip_dir(
    directory: str | Path, sample_rate: int = DEFAULT_SAMPLE_RATE
) -> ClipDirectory:
    """Scan a directory of recorded unit clips."""
    return ClipDirectory(directory, sample_rate)
