"""Audio primitives: clips, concatenation, stretch, pitch shift, WAV I/O.

All audio is mono 16-bit PCM held as int16 numpy arrays.  Pitch
shifting preserves duration exactly: the clip is resampled by the
semitone ratio and then phase-vocoder stretched back to its original
frame count.  Time stretching preserves pitch.
"""

from __future__ import annotations

import wave
from dataclasses import dataclass
from pathlib import Path

import numpy as np

from .errors import BadWav, SampleRateMismatch

DEFAULT_SAMPLE_RATE = 44100
CROSSFADE_SECONDS = 0.005
PITCH_MIN = -7
PITCH_MAX = 4

_MAX_NFFT = 2048


@dataclass(frozen=True, eq=False)
class AudioClip:
    """Mono 16-bit audio: an int16 sample array and its rate."""

    samples: np.ndarray
    sample_rate: int

    def __post_init__(self):
        if self.samples.dtype != np.int16 or self.samples.ndim != 1:
            raise TypeError("samples must be a 1-D int16 array")
        if self.sample_rate <= 0:
            raise ValueError("sample_rate must be positive")

    @property
    def n_frames(self) -> int:
        return len(self.samples)

    @property
    def duration_seconds(self) -> float:
        return len(self.samples) / self.sample_rate


def _to_float(samples: np.ndarray) -> np.ndarray:
    return samples.astype(np.float64) / 32768.0

def _to_int16(x: np.ndarray) -> np.ndarray:
    return np.clip(np.rint(x * 32768.0), -32768, 32767).astype(np.int16)


def crossfade_frames(sample_rate: int) -> int:
    """Frame count of the standard 5 ms crossfade at this rate."""
    return int(round(CROSSFADE_SECONDS * sample_rate))


def silence(beats: float, beat_seconds: float, sample_rate: int) -> AudioClip:
    n = int(round(beats * beat_seconds * sample_rate))
    return AudioClip(np.zeros(n, dtype=np.int16), sample_rate)


def concat(clips: list[AudioClip], crossfade: int = 0) -> AudioClip:
    """Join clips end to end.

    With ``crossfade`` > 0 each join overlaps that many frames with an
    equal-power fade, so every join shortens the result by exactly
    ``crossfade`` frames (less when a clip is shorter than the fade).
    All clips must share one sample rate.
    """
    if not clips:
        return AudioClip(np.zeros(0, dtype=np.int16), DEFAULT_SAMPLE_RATE)
    rates = {c.sample_rate for c in clips}
    if len(rates) > 1:
        raise SampleRateMismatch(sorted(rates))
    rate = clips[0].sample_rate
    if crossfade <= 0:
        return AudioClip(np.concatenate([c.samples for c in clips]), rate)

    merged = _to_float(clips[0].samples)
    for clip in clips[1:]:
        nxt = _to_float(clip.samples)
        xf = min(crossfade, len(merged), len(nxt))
        if xf == 0:
            merged = np.concatenate([merged, nxt])
            continue
        t = (np.arange(xf) + 0.5) / xf
        overlap = merged[-xf:] * np.cos(t * np.pi / 2) + nxt[:xf] * np.sin(t * np.pi / 2)
        merged = np.concatenate([merged[:-xf], overlap, nxt[xf:]])
    return AudioClip(_to_int16(merged), rate)


def resample(clip: AudioClip, target_rate: int) -> AudioClip:
    """Linear-interpolation resample to a new sample rate."""
    if target_rate <= 0:
        raise ValueError("target_rate must be positive")
    if clip.n_frames == 0:
        return AudioClip(clip.samples, target_rate)
    if target_rate == clip.sample_rate:
        return clip
    x = _to_float(clip.samples)
    n = len(x)
    m = max(1, int(round(n * target_rate / clip.sample_rate)))
    pos = np.minimum(np.arange(m) * (clip.sample_rate / target_rate), n - 1)
    y = np.interp(pos, np.arange(n), x)
    return AudioClip(_to_int16(y), target_rate)


# ---------------------------------------------------------------------------
# Phase-vocoder stretching

def _periodic_hann(n: int) -> np.ndarray:
    return 0.5 - 0.5 * np.cos(2.0 * np.pi * np.arange(n) / n)


def _stft(x: np.ndarray, n_fft: int, hop: int, window: np.ndarray) -> np.ndarray:
    xp = np.pad(x, n_fft // 2)
    n_frames = 1 + (len(xp) - n_fft) // hop
    idx = np.arange(n_fft)[None, :] + hop * np.arange(n_frames)[:, None]
    return np.fft.rfft(xp[idx] * window, axis=1).T  # [bins, frames]


def _istft(spec: np.ndarray, n_fft: int, hop: int, window: np.ndarray) -> np.ndarray:
    n_frames = spec.shape[1]
    out_len = (n_frames - 1) * hop + n_fft
    y = np.zeros(out_len)
    wsum = np.zeros(out_len)
    frames = np.fft.irfft(spec.T, n=n_fft, axis=1) * window
    wsq = window * window
    for t in range(n_frames):
        y[t * hop : t * hop + n_fft] += frames[t]
        wsum[t * hop : t * hop + n_fft] += wsq
    y /= np.maximum(wsum, 1e-8)
    return y[n_fft // 2 :]  # undo the center padding


def _stretch_signal(x: np.ndarray, n_out: int) -> np.ndarray:
    """Stretch float signal x to exactly n_out samples, keeping pitch."""
    n_in = len(x)
    if n_out == n_in:
        return x.copy()
    if n_out == 0:
        return np.zeros(0)
    if n_in == 0:
        return np.zeros(n_out)
    if n_in < 64:
        # too short to frame; plain resample is inaudible at these sizes
        return np.interp(np.linspace(0.0, n_in - 1.0, n_out), np.arange(n_in), x)

    n_fft = min(_MAX_NFFT, 1 << (n_in.bit_length() - 1))
    hop = n_fft // 4
    window = _periodic_hann(n_fft)
    spec = _stft(x, n_fft, hop, window)
    n_bins, t_in = spec.shape

    t_out = max(2, int(round(n_out / hop)) + 1)
    steps = np.linspace(0.0, t_in - 1.0, t_out)

    # append a copy of the last frame so step + 1 always has a column
    spec = np.concatenate([spec, spec[:, -1:]], axis=1)
    mags = np.abs(spec)
    phases = np.angle(spec)
    phi_advance = 2.0 * np.pi * hop * np.arange(n_bins) / n_fft

    out = np.empty((n_bins, t_out), dtype=complex)
    phase_acc = phases[:, 0].copy()
    for t, step in enumerate(steps):
        i = int(step)
        frac = step - i
        mag = (1.0 - frac) * mags[:, i] + frac * mags[:, i + 1]
        out[:, t] = mag * np.exp(1j * phase_acc)
        dphi = phases[:, i + 1] - phases[:, i] - phi_advance
        dphi -= 2.0 * np.pi * np.round(dphi / (2.0 * np.pi))
        phase_acc += phi_advance + dphi

    y = _istft(out, n_fft, hop, window)
    if len(y) < n_out:
        y = np.pad(y, (0, n_out - len(y)))
    return y[:n_out]


def stretch_to_length(clip: AudioClip, n_frames: int) -> AudioClip:
    """Phase-vocoder stretch to an exact frame count."""
    if n_frames < 0:
        raise ValueError("n_frames must be >= 0")
    if n_frames == clip.n_frames:
        return clip
    y = _stretch_signal(_to_float(clip.samples), n_frames)
    return AudioClip(_to_int16(y), clip.sample_rate)


def time_stretch(clip: AudioClip, factor: float) -> AudioClip:
    """Stretch duration by ``factor`` (0.5..4) without changing pitch."""
    if not 0.5 <= factor <= 4.0:
        raise ValueError(f"stretch factor {factor} outside 0.5..4")
    if factor == 1.0:
        return clip
    return stretch_to_length(clip, int(round(clip.n_frames * factor)))


def pitch_shift(clip: AudioClip, semitones: int) -> AudioClip:
    """Shift pitch by whole semitones, keeping the frame count.

    A shift of 0 returns the clip unchanged, bit for bit.
    """
    if semitones != int(semitones):
        raise ValueError("semitones must be an integer")
    semitones = int(semitones)
    if not PITCH_MIN <= semitones <= PITCH_MAX:
        raise ValueError(f"semitone shift {semitones} outside {PITCH_MIN}..{PITCH_MAX}")
    if semitones == 0 or clip.n_frames == 0:
        return clip
    ratio = 2.0 ** (semitones / 12.0)
    x = _to_float(clip.samples)
    n = len(x)
    m = max(1, int(round(n / ratio)))
    pos = np.minimum(np.arange(m) * ratio, n - 1)
    resampled = np.interp(pos, np.arange(n), x)
    y = _stretch_signal(resampled, n)
    return AudioClip(_to_int16(y), clip.sample_rate)


# ---------------------------------------------------------------------------
# WAV I/O (RIFF, PCM, mono, 16-bit)

def write_wav(clip: AudioClip, path: str | Path) -> None:
    with wave.open(str(path), "wb") as w:
        w.setnchannels(1)
        w.setsampwidth(2)
        w.setframerate(clip.sample_rate)
        w.writeframes(clip.samples.astype("<i2").tobytes())


def read_wav(path: str | Path) -> AudioClip:
    """Read a mono 16-bit PCM WAV file; anything else raises BadWav."""
    try:
        with wave.open(str(path), "rb") as w:
            channels = w.getnchannels()
            width = w.getsampwidth()
            comp = w.getcomptype()
            rate = w.getframerate()
            data = w.readframes(w.getnframes())
    except FileNotFoundError:
        raise
    except (wave.Error, EOFError) as exc:
        raise BadWav(path, str(exc)) from None
    if comp != "NONE":
        raise BadWav(path, f"compressed WAV ({comp}) not supported")
    if channels != 1:
        raise BadWav(path, f"need mono, file has {channels} channels")
    if width != 2:
        raise BadWav(path, f"need 16-bit samples, file has {8 * width}-bit")
    samples = np.frombuffer(data, dtype="<i2").astype(np.int16)
    return AudioClip(samples, rate)
