import numpy as np
import pytest

from storycaster.audio import (
    CHIME_DURATION_S,
    AudioSource,
    PlaybackRegistry,
    PlanEntry,
    PlaybackPlan,
    SAMPLE_RATE,
    loop_seam_rms,
    make_chime,
    pan_gains,
    render_plan,
    resample_24_to_48,
    sequential_plan,
    spatialize,
)
from storycaster.errors import DuplicateSourceError, UnknownSourceError


def tone(duration_s=1.0, freq=440.0, rate=SAMPLE_RATE):
    t = np.arange(int(duration_s * rate)) / rate
    return (0.4 * np.sin(2 * np.pi * freq * t)).astype(np.float32)


def src(name, duration_s=1.0, loop=False, position=(0, 0, 1.2), volume=1.0):
    return AudioSource(name, tone(duration_s), np.array(position, float), volume, loop)


class TestRegistry:
    def test_add_remove_add_cycle(self):
        reg = PlaybackRegistry()
        reg.add(src("ambient"))
        reg.remove("ambient")
        reg.add(src("ambient"))
        assert "ambient" in reg

    def test_duplicate_add_rejected(self):
        reg = PlaybackRegistry()
        reg.add(src("a"))
        with pytest.raises(DuplicateSourceError, match="duplicate source"):
            reg.add(src("a"))

    def test_replay_and_remove_unknown_rejected(self):
        reg = PlaybackRegistry()
        with pytest.raises(UnknownSourceError):
            reg.replay("ghost")
        with pytest.raises(UnknownSourceError):
            reg.remove("ghost")

    def test_two_sources_start_at_zero_in_event_log(self):
        reg = PlaybackRegistry()
        reg.add(src("a", 0.5))
        reg.add(src("b", 0.5))
        out = render_plan(reg.plan(), reg)
        starts = [(t, s) for t, s, action in out.events if action == "start"]
        assert (0.0, "a") in starts and (0.0, "b") in starts

    def test_replay_restarts_clock(self):
        reg = PlaybackRegistry()
        reg.add(src("a", 0.25))
        reg.clock = 1.0
        reg.replay("a")
        plan = reg.plan()
        assert plan.entries[0].offset_frames == SAMPLE_RATE


class TestResampler:
    def test_exactly_doubles_frames(self):
        x = np.random.default_rng(0).normal(size=24_000).astype(np.float32) * 0.2
        assert len(resample_24_to_48(x)) == 48_000

    def test_sine_survives_with_high_snr(self):
        t = np.arange(24_000) / 24_000
        y = resample_24_to_48(np.sin(2 * np.pi * 440 * t))
        seg = y[2000:-2000].astype(np.float64)
        spec = np.abs(np.fft.rfft(seg * np.hanning(len(seg)))) ** 2
        freqs = np.fft.rfftfreq(len(seg), 1 / 48_000)
        peak = freqs[np.argmax(spec)]
        assert abs(peak - 440.0) <= 1.0
        sig = spec[np.abs(freqs - 440) < 5].sum()
        noise = spec[(np.abs(freqs - 440) >= 5) & (freqs > 20)].sum()
        assert 10 * np.log10(sig / noise) > 40.0

    def test_dc_preserved(self):
        y = resample_24_to_48(np.full(5000, 0.5))
        assert np.abs(y - 0.5).max() < 1e-3

    def test_empty_rejected(self):
        with pytest.raises(ValueError):
            resample_24_to_48(np.array([]))


class TestSpatialize:
    def test_source_directly_left(self):
        left, right = pan_gains(np.array([0.0, 1.0, 1.2]), np.array([0.0, 0.0, 1.2]), 1.0)
        assert right == pytest.approx(0.0, abs=1e-12)
        assert left == pytest.approx(1.0, abs=1e-12)

    def test_source_directly_ahead_is_constant_power_center(self):
        left, right = pan_gains(np.array([1.0, 0.0, 1.2]), np.array([0.0, 0.0, 1.2]), 1.0)
        assert left == pytest.approx(1 / np.sqrt(2), abs=1e-6)
        assert right == pytest.approx(1 / np.sqrt(2), abs=1e-6)

    def test_constant_power_for_random_positions(self):
        rng = np.random.default_rng(9)
        listener = np.array([0.0, 0.0, 1.2])
        for _ in range(100):
            pos = rng.uniform(-3, 3, 3)
            vol = float(rng.uniform(0.1, 1.0))
            source = AudioSource("s", tone(0.01), pos, vol)
            left, right = spatialize(source, listener)
            r = float(np.linalg.norm(pos - listener))
            expected = (vol / max(1.0, r)) ** 2
            assert left**2 + right**2 == pytest.approx(expected, rel=1e-9)


class TestRenderPlan:
    def test_sequential_dialogue_has_zero_gap(self):
        reg = PlaybackRegistry()
        a, b = src("line0", 1.0), src("line1", 1.0)
        reg.add(a)
        reg.add(b)
        plan = sequential_plan([a, b])
        assert plan.entries[1].offset_frames == 48_000
        out = render_plan(plan, reg)
        starts = {s: t for t, s, action in out.events if action == "start"}
        assert starts["line1"] == pytest.approx(1.0)
        assert len(out.frames) == 96_000

    def test_loop_boundaries_logged_and_seamless(self):
        reg = PlaybackRegistry()
        loop = AudioSource("bed", tone(2.0, freq=220.0), np.array([0, 0, 1.2]), 0.8, loop=True)
        reg.add(loop)
        plan = PlaybackPlan([PlanEntry("bed", 0)], 5 * SAMPLE_RATE)
        out = render_plan(plan, reg)
        loops = [t for t, s, action in out.events if action == "loop"]
        assert loops == [pytest.approx(2.0), pytest.approx(4.0)]
        assert loop_seam_rms(out.frames[:, 0]) < 0.05

    def test_empty_plan_renders_nothing(self):
        reg = PlaybackRegistry()
        out = render_plan(PlaybackPlan([], 0), reg)
        assert out.frames.shape == (0, 2)
        assert out.events == []

    def test_unknown_source_rejected(self):
        reg = PlaybackRegistry()
        with pytest.raises(UnknownSourceError):
            render_plan(PlaybackPlan([PlanEntry("ghost", 0)], 100), reg)

    def test_master_limiter_normalizes_and_logs(self):
        reg = PlaybackRegistry()
        loud = AudioSource("loud", np.full(1000, 0.9, np.float32), np.array([1.0, 0, 1.2]), 1.0)
        loud2 = AudioSource("loud2", np.full(1000, 0.9, np.float32), np.array([1.0, 0, 1.2]), 1.0)
        reg.add(loud)
        reg.add(loud2)
        out = render_plan(reg.plan(), reg)
        assert np.abs(out.frames).max() <= 1.0
        assert any(action == "limit" for _, _, action in out.events)

    def test_render_deterministic(self):
        reg = PlaybackRegistry()
        reg.add(src("a", 0.3))
        reg.add(src("b", 0.4, loop=True))
        plan = reg.plan(duration_s=1.0)
        one = render_plan(plan, reg)
        two = render_plan(plan, reg)
        assert np.array_equal(one.frames, two.frames)
        assert one.events == two.events


class TestChime:
    def test_chime_is_19200_frames(self):
        chime = make_chime()
        assert chime.n_frames == 19_200
        assert chime.volume == 0.6
        assert chime.name == "chime"

    def test_rapid_chimes_do_not_overlap(self):
        reg = PlaybackRegistry()
        t1 = reg.schedule_chime()
        t2 = reg.schedule_chime()
        assert t1 == 0.0
        assert t2 == pytest.approx(CHIME_DURATION_S)

    def test_chime_after_each_input_in_scripted_session(self, small_config, shared_room, tmp_path):
        from storycaster.artifacts import ArtifactStore
        from storycaster.backends import ScriptedTranscriber
        from storycaster.config import assets_root
        from storycaster.runtime import SessionRuntime

        runtime = SessionRuntime(
            small_config, room=shared_room, artifact_store=ArtifactStore(tmp_path)
        )
        runtime.run_script(
            ScriptedTranscriber.from_file(assets_root() / "sessions" / "story_02.txt")
        )
        kinds = [e["kind"] for e in runtime.events]
        n_inputs = kinds.count("user")
        n_chimes = kinds.count("chime")
        assert n_inputs == n_chimes
        # each user event is followed by a chime before the next narrator line
        for i, e in enumerate(runtime.events):
            if e["kind"] != "user":
                continue
            upcoming = [x["kind"] for x in runtime.events[i + 1 :]]
            seen_chimes = 0
            for kind in upcoming:
                if kind == "chime":
                    seen_chimes += 1
                    break
                assert kind != "narrator", "narrator spoke before the chime"
            assert seen_chimes == 1
