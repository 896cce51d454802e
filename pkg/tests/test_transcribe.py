import pytest

from storycaster.backends import ScriptedTranscriber, SilenceSegmenter


class TestScripted:
    def test_returns_utterances_in_order(self):
        t = ScriptedTranscriber(["a story about Mars", "yes"])
        assert t.next_utterance() == "a story about Mars"
        assert t.next_utterance() == "yes"

    def test_exhaustion_signals_session_end(self):
        t = ScriptedTranscriber(["only one"])
        t.next_utterance()
        assert t.next_utterance() is None

    def test_file_loading_skips_comments(self, tmp_path):
        path = tmp_path / "script.txt"
        path.write_text("# a comment\nhello\n\n  yes  \n")
        t = ScriptedTranscriber.from_file(path)
        assert t.next_utterance() == "hello"
        assert t.next_utterance() == "yes"
        assert t.next_utterance() is None


class TestSilenceSegmenter:
    def test_mid_utterance_pause_under_timeout_does_not_cut(self):
        seg = SilenceSegmenter(silence_timeout_s=3.0)
        seg.add_speech("tell me a story", 1.5)
        assert seg.add_silence(2.5) is None  # hesitation, not the end
        seg.add_speech("about dragons", 1.0)
        final = seg.add_silence(3.5)
        assert final == "tell me a story about dragons"
        assert seg.finalized == ["tell me a story about dragons"]

    def test_trailing_silence_at_timeout_finalizes(self):
        seg = SilenceSegmenter(silence_timeout_s=3.0)
        seg.add_speech("hello room", 1.0)
        assert seg.add_silence(1.0) is None
        assert seg.add_silence(1.0) is None
        assert seg.add_silence(1.5) == "hello room"

    def test_silence_without_speech_never_fires(self):
        seg = SilenceSegmenter(silence_timeout_s=3.0)
        assert seg.add_silence(10.0) is None
        assert seg.finalized == []

    def test_speech_resets_accumulated_silence(self):
        seg = SilenceSegmenter(silence_timeout_s=3.0)
        seg.add_speech("one", 0.5)
        seg.add_silence(2.9)
        seg.add_speech("two", 0.5)
        assert seg.add_silence(2.9) is None
        assert seg.add_silence(0.2) == "one two"

    @pytest.mark.parametrize("timeout", [1.0, 3.0, 5.0])
    def test_configurable_timeout(self, timeout):
        seg = SilenceSegmenter(silence_timeout_s=timeout)
        seg.add_speech("x", 0.1)
        assert seg.add_silence(timeout - 0.01) is None
        assert seg.add_silence(0.01) == "x"
