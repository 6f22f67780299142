from __future__ import annotations

import random

import numpy as np
import pytest

from versechant.alphabet import classify
from versechant.audio_store import ClipRequest, SyntheticVoice, synth_clip
from versechant.dsp import concat, crossfade_frames, read_wav, silence
from versechant.errors import (
    ChantError,
    EmptyVerse,
    NoMatchingMetre,
    UnknownCharacter,
)
from versechant.prosody import Weight
from versechant.synthesis import (
    Config,
    TimedUnit,
    actual_time,
    adjust_beat,
    expected_time,
    prepare,
    render_quarter,
    synthesize,
)
from versechant.units import Unit

from conftest import Q1_T, Q1_TA, Q1_TE, Q1_V, SAMPLE_VERSE


def make_timed(t: int, v: int, word_final: bool) -> TimedUnit:
    unit = Unit((), classify("a"), (), word_final)
    return TimedUnit(unit, Weight(t), Weight(v), 0, t + 1, 0)


def test_expected_and_actual_time():
    assert expected_time(Weight(v) for v in Q1_V) == Q1_TE == 18
    assert actual_time(Weight(t) for t in Q1_T) == Q1_TA == 16
    assert expected_time([]) == 0


def test_adjust_beat_cases():
    stretched = adjust_beat([make_timed(0, 1, word_final=False)])[0]
    assert stretched.render_beats == 2
    assert stretched.trailing_silence_beats == 0
    padded = adjust_beat([make_timed(0, 1, word_final=True)])[0]
    assert padded.render_beats == 1
    assert padded.trailing_silence_beats == 1
    plain = adjust_beat([make_timed(1, 1, word_final=True)])[0]
    assert plain.render_beats == 2
    assert plain.trailing_silence_beats == 0
    light = adjust_beat([make_timed(0, 0, word_final=False)])[0]
    assert light.render_beats == 1
    assert light.trailing_silence_beats == 0


def test_beat_conservation_random():
    rng = random.Random(424242)
    for _ in range(50):
        n = rng.randint(1, 30)
        timed = []
        for _ in range(n):
            t = rng.randint(0, 1)
            v = max(t, rng.randint(0, 1))
            timed.append(make_timed(t, v, word_final=rng.random() < 0.4))
        adjusted = adjust_beat(timed)
        total = sum(tu.render_beats + tu.trailing_silence_beats for tu in adjusted)
        assert total == expected_time(tu.contextual for tu in timed)


def test_prepare_sample_verse():
    plan = prepare(SAMPLE_VERSE, Config())
    assert plan.analysis.metre.name == "Upajāti"
    assert [q.expected_beats for q in plan.quarters] == [18, 18, 17, 18]
    assert plan.quarters[0].actual_beats == 16
    assert [q.caesuras for q in plan.quarters] == [(11,)] * 4
    assert plan.total_beats == 18 + 18 + 17 + 18 + 4
    # every quarter fills its expected beats after adjustment
    for quarter in plan.quarters:
        filled = sum(
            tu.render_beats + tu.trailing_silence_beats for tu in quarter.timed
        )
        assert filled == quarter.expected_beats


def test_prepare_pitches_follow_metre_rows():
    plan = prepare(SAMPLE_VERSE, Config())
    record = plan.analysis.metre
    for q, quarter in enumerate(plan.quarters):
        assert [tu.pitch for tu in quarter.timed] == list(record.pitch_array(q))


def test_prepare_devanagari_autodetect():
    plan = prepare("वन्दे नमः", Config(require_metre=False))
    texts = [tu.unit.text for q in plan.quarters for tu in q.timed]
    assert texts == ["van", "de", "na", "maḥ"]


def test_prepare_empty_verse():
    with pytest.raises(EmptyVerse):
        prepare("  ||  ", Config())


def test_prepare_stage_annotation():
    with pytest.raises(UnknownCharacter) as info:
        prepare("vande qurūṇāṃ x4 ||", Config())
    assert info.value.stage == "tokenize"


def test_prepare_unmatched_verse():
    with pytest.raises(NoMatchingMetre):
        prepare("vande gurūṇāṃ", Config())
    plan = prepare("vande gurūṇāṃ", Config(require_metre=False))
    assert plan.analysis.metre is None
    assert all(tu.pitch == 0 for q in plan.quarters for tu in q.timed)
    assert plan.quarters[0].caesuras == (len(plan.quarters[0].timed),)


def test_synthesize_duration_no_crossfade():
    config = Config(crossfade=False)
    result = synthesize(SAMPLE_VERSE, config)
    want = int(round(result.plan.total_beats * 0.5 * 44100))
    assert result.clip.n_frames == want


def test_synthesize_duration_with_crossfade():
    result = synthesize(SAMPLE_VERSE, Config())
    xf = crossfade_frames(44100)
    want = int(round(result.plan.total_beats * 0.5 * 44100))
    assert result.joins == result.plan.piece_count - 1
    assert abs(want - result.clip.n_frames) <= result.joins * xf


def test_synthesize_writes_wav(tmp_path):
    out = tmp_path / "verse.wav"
    result = synthesize(SAMPLE_VERSE, Config(beat_seconds=0.25), out_path=out)
    assert result.wav_path == out
    back = read_wav(out)
    assert back.sample_rate == 44100
    assert back.n_frames == result.clip.n_frames


def test_beat_and_rate_scale_duration():
    # 0.2 s at 22050 Hz keeps every beat a whole 4410 frames
    config = Config(beat_seconds=0.2, sample_rate=22050, crossfade=False)
    result = synthesize(SAMPLE_VERSE, config)
    assert result.clip.n_frames == result.plan.total_beats * 4410
    assert result.clip.sample_rate == 22050


def test_zero_pitch_equals_plain_concatenation(tmp_path):
    # a metre db with all-zero pitch rows must reproduce the raw
    # unpitched clip sequence exactly
    db = tmp_path / "flat.txt"
    db.write_text(
        "name: flat\nsyllables: 11 11 11 11\ncaesura: 11\n"
        "pitch_q13: 0 0 0 0 0 0 0 0 0 0 0\n"
        "pitch_q24: 0 0 0 0 0 0 0 0 0 0 0\n",
        encoding="utf-8",
    )
    config = Config(metre_db_path=db, crossfade=False)
    plan = prepare(SAMPLE_VERSE, config)
    store = SyntheticVoice(config.base_freq, config.sample_rate)
    rendered = render_quarter(plan, 0, store, config)

    pieces = []
    for tu in plan.quarters[0].timed:
        req = ClipRequest(tu.unit.text, Weight(tu.render_beats - 1), 0.5)
        pieces.append(synth_clip(req, config.base_freq, config.sample_rate))
        if tu.trailing_silence_beats:
            pieces.append(silence(tu.trailing_silence_beats, 0.5, 44100))
    pieces.append(silence(1, 0.5, 44100))
    want = concat(pieces)
    assert np.array_equal(rendered.samples, want.samples)


def test_synthesize_from_clip_directory(tmp_path):
    from versechant.dsp import write_wav

    config = Config(crossfade=False, require_metre=False)
    # record every (unit, render weight) the verse needs
    plan = prepare("vande gurūṇām", config)
    for quarter in plan.quarters:
        for tu in quarter.timed:
            weight = Weight(tu.render_beats - 1)
            clip = synth_clip(ClipRequest(tu.unit.text, weight, 0.5), 196.0)
            write_wav(clip, tmp_path / f"{tu.unit.text}_{weight.tag}.wav")
    config.clip_dir = tmp_path
    result = synthesize("vande gurūṇām", config)
    want = int(round(result.plan.total_beats * 0.5 * 44100))
    assert result.clip.n_frames == want


def test_synthesize_missing_clip_annotated(tmp_path):
    config = Config(clip_dir=tmp_path, require_metre=False)
    with pytest.raises(ChantError) as info:
        synthesize("vande", config)
    assert info.value.stage == "clips"


def test_render_quarter_alone():
    config = Config(crossfade=False)
    plan = prepare(SAMPLE_VERSE, config)
    store = SyntheticVoice()
    clip = render_quarter(plan, 2, store, config)
    want = (plan.quarters[2].total_beats) * int(0.5 * 44100)
    assert clip.n_frames == want
