"""End-to-end chant rendering: verse text in, beat-aligned audio out.

The pipeline is: split the text into quarters, tokenize, apply sandhi
corrections, split into units, weigh and classify the metre, then
fetch one clip per unit, pitch it per the metre's pitch row, and
concatenate everything on the beat grid with rests at the caesuras.

Beat accounting: a unit whose chanted time t falls short of its
metrical time v gets the difference as trailing silence when it ends
a word, and is chanted long (stretched clip) when it does not, so
every quarter fills exactly its expected beats.
"""

from __future__ import annotations

from contextlib import contextmanager
from dataclasses import dataclass, replace
from pathlib import Path

from .audio_store import ClipDirectory, ClipProvider, ClipRequest, SyntheticVoice
from .dsp import (
    DEFAULT_SAMPLE_RATE,
    AudioClip,
    concat,
    crossfade_frames,
    pitch_shift,
    silence,
    write_wav,
)
from .errors import ChantError, EmptyVerse
from .prosody import VerseAnalysis, Weight, analyze_quarters, load_metre_db
from .sandhi import apply_all
from .transliteration import detect_devanagari, devanagari_to_latin, split_quarters, tokenize
from .units import Unit, split_into_units


@dataclass
class Config:
    beat_seconds: float = 0.5
    sample_rate: int = DEFAULT_SAMPLE_RATE
    base_freq: float = 220.0
    crossfade: bool = True
    promote_light_clusters: bool = False
    metre_db_path: str | Path | None = None
    clip_dir: str | Path | None = None
    require_metre: bool = True


@dataclass(frozen=True)
class TimedUnit:
    """A unit scheduled on the beat grid.

    ``isolated`` (t) and ``contextual`` (v) are the unit's weights;
    the unit is chanted for ``render_beats`` and followed by
    ``trailing_silence_beats`` of rest, together always v + 1 beats.
    """

    unit: Unit
    isolated: Weight
    contextual: Weight
    pitch: int
    render_beats: int
    trailing_silence_beats: int


def expected_time(contextual_weights) -> int:
    """Beats the sequence owes the metre: sum of v + 1."""
    return sum(int(w) + 1 for w in contextual_weights)


def actual_time(isolated_weights) -> int:
    """Beats the bare clips would fill: sum of t + 1."""
    return sum(int(w) + 1 for w in isolated_weights)


def adjust_beat(timed: list[TimedUnit]) -> list[TimedUnit]:
    """Make each unit fill its metrical time.

    A short-chanted unit (t < v) pads with silence at a word end and
    stretches mid-word; everything else chants for t + 1 beats.  After
    adjustment render + silence always sums to v + 1 per unit.
    """
    out = []
    for tu in timed:
        if tu.isolated < tu.contextual:
            gap = int(tu.contextual) - int(tu.isolated)
            if tu.unit.word_final:
                out.append(
                    replace(
                        tu,
                        render_beats=int(tu.isolated) + 1,
                        trailing_silence_beats=gap,
                    )
                )
            else:
                out.append(
                    replace(
                        tu,
                        render_beats=int(tu.contextual) + 1,
                        trailing_silence_beats=0,
                    )
                )
        else:
            out.append(
                replace(tu, render_beats=int(tu.isolated) + 1, trailing_silence_beats=0)
            )
    return out


@dataclass(frozen=True)
class QuarterPlan:
    timed: tuple[TimedUnit, ...]
    caesuras: tuple[int, ...]  # 1-based positions followed by a one-beat rest

    @property
    def expected_beats(self) -> int:
        return expected_time(tu.contextual for tu in self.timed)

    @property
    def actual_beats(self) -> int:
        return actual_time(tu.isolated for tu in self.timed)

    @property
    def total_beats(self) -> int:
        return self.expected_beats + len(self.caesuras)

    @property
    def piece_count(self) -> int:
        """Clips this quarter contributes: units, rests, silences."""
        return (
            len(self.timed)
            + sum(1 for tu in self.timed if tu.trailing_silence_beats)
            + len(self.caesuras)
        )


@dataclass(frozen=True)
class VersePlan:
    analysis: VerseAnalysis
    quarters: tuple[QuarterPlan, ...]

    @property
    def total_beats(self) -> int:
        return sum(q.total_beats for q in self.quarters)

    @property
    def piece_count(self) -> int:
        return sum(q.piece_count for q in self.quarters)

    @property
    def joins(self) -> int:
        return max(0, self.piece_count - 1)


@dataclass(frozen=True)
class RenderResult:
    clip: AudioClip
    plan: VersePlan
    joins: int
    wav_path: Path | None = None


@contextmanager
def _stage(name: str):
    # annotate errors with the pipeline stage they escaped from
    try:
        yield
    except ChantError as exc:
        if exc.stage is None:
            exc.stage = name
        raise


def prepare(text: str, config: Config | None = None) -> VersePlan:
    """Analyze verse text into a beat-exact rendering plan (no audio)."""
    config = config if config is not None else Config()
    with _stage("transliteration"):
        if detect_devanagari(text):
            text = devanagari_to_latin(text)
        chunks = split_quarters(text)
    if not chunks:
        err = EmptyVerse()
        err.stage = "input"
        raise err

    quarter_units: list[list[Unit]] = []
    for chunk in chunks:
        with _stage("tokenize"):
            stream = tokenize(chunk)
        with _stage("sandhi"):
            stream = apply_all(stream)
        with _stage("unit split"):
            quarter_units.append(split_into_units(stream))

    with _stage("metre"):
        db = load_metre_db(config.metre_db_path)
        analysis = analyze_quarters(
            quarter_units,
            db,
            promote_light_clusters=config.promote_light_clusters,
            require_metre=config.require_metre,
        )

    plans = []
    for q, weighted in enumerate(analysis.quarters):
        with _stage("pitch"):
            row = analysis.pitches(q)
        timed = [
            TimedUnit(
                unit=wu.unit,
                isolated=wu.isolated,
                contextual=wu.contextual,
                pitch=row[i],
                render_beats=int(wu.isolated) + 1,
                trailing_silence_beats=0,
            )
            for i, wu in enumerate(weighted)
        ]
        plans.append(QuarterPlan(tuple(adjust_beat(timed)), analysis.caesuras(q)))
    return VersePlan(analysis, tuple(plans))


def _quarter_pieces(
    plan: QuarterPlan, store: ClipProvider, config: Config
) -> list[AudioClip]:
    pieces = []
    for pos, tu in enumerate(plan.timed, start=1):
        request = ClipRequest(
            tu.unit.text, Weight(tu.render_beats - 1), config.beat_seconds
        )
        with _stage("clips"):
            clip = store.get_clip(request)
        with _stage("pitch"):
            clip = pitch_shift(clip, tu.pitch)
        pieces.append(clip)
        if tu.trailing_silence_beats:
            pieces.append(
                silence(tu.trailing_silence_beats, config.beat_seconds, config.sample_rate)
            )
        if pos in plan.caesuras:
            pieces.append(silence(1, config.beat_seconds, config.sample_rate))
    return pieces


def render_quarter(
    plan: VersePlan, quarter: int, store: ClipProvider, config: Config
) -> AudioClip:
    """Render one quarter to audio on its own."""
    xf = crossfade_frames(config.sample_rate) if config.crossfade else 0
    return concat(_quarter_pieces(plan.quarters[quarter], store, config), xf)


def _make_store(config: Config) -> ClipProvider:
    if config.clip_dir is not None:
        return ClipDirectory(config.clip_dir, config.sample_rate)
    return SyntheticVoice(config.base_freq, config.sample_rate)


def synthesize(
    text: str,
    config: Config | None = None,
    out_path: str | Path | None = None,
    store: ClipProvider | None = None,
) -> RenderResult:
    """Render a verse to one audio clip, optionally writing a WAV file."""
    config = config if config is not None else Config()
    plan = prepare(text, config)
    store = store if store is not None else _make_store(config)
    xf = crossfade_frames(config.sample_rate) if config.crossfade else 0
    try:
        with _stage("render"):
            pieces: list[AudioClip] = []
            for q in range(len(plan.quarters)):
                pieces.extend(_quarter_pieces(plan.quarters[q], store, config))
            clip = concat(pieces, xf)
    finally:
        store.clear_cache()
    wav_path = None
    if out_path is not None:
        wav_path = Path(out_path)
        with _stage("output"):
            write_wav(clip, wav_path)
    return RenderResult(clip, plan, joins=plan.joins, wav_path=wav_path)
