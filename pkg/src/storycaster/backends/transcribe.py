"""Speech-to-text stand-ins.

Two providers:

* :class:`ScriptedTranscriber` replays a fixed list of utterances (the
  headless session driver); exhaustion signals a session-end request by
  returning ``None``.
* :class:`SilenceSegmenter` simulates streaming recognition timing: speech
  fragments accumulate until trailing silence reaches the end-of-segmentation
  timeout (default 3 s), at which point the utterance finalizes.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from pathlib import Path

DEFAULT_SILENCE_TIMEOUT_S = 3.0


class ScriptedTranscriber:
    def __init__(self, utterances: list[str]):
        self._utterances = list(utterances)
        self._pos = 0

    @classmethod
    def from_file(cls, path: str | Path) -> "ScriptedTranscriber":
        lines = []
        for raw in Path(path).read_text().splitlines():
            line = raw.strip()
            if not line or line.startswith("#"):
                continue
            lines.append(line)
        return cls(lines)

    @property
    def remaining(self) -> int:
        return len(self._utterances) - self._pos

    def next_utterance(self) -> str | None:
        """The next scripted utterance, or None when the script is exhausted."""
        if self._pos >= len(self._utterances):
            return None
        text = self._utterances[self._pos]
        self._pos += 1
        return text


@dataclass
class SilenceSegmenter:
    """End-of-speech detection for a simulated audio stream.

    Feed alternating speech and silence segments; ``add_silence`` returns the
    finalized utterance once accumulated trailing silence reaches the timeout.
    Silence shorter than the timeout (a pause or hesitation) never cuts an
    utterance.
    """

    silence_timeout_s: float = DEFAULT_SILENCE_TIMEOUT_S
    _parts: list[str] = field(default_factory=list)
    _trailing_silence: float = 0.0
    finalized: list[str] = field(default_factory=list)

    def add_speech(self, text: str, duration_s: float) -> None:
        self._parts.append(text)
        self._trailing_silence = 0.0

    def add_silence(self, duration_s: float) -> str | None:
        self._trailing_silence += duration_s
        if self._trailing_silence >= self.silence_timeout_s and self._parts:
            utterance = " ".join(self._parts)
            self._parts = []
            self._trailing_silence = 0.0
            self.finalized.append(utterance)
            return utterance
        return None
