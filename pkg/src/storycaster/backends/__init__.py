"""Generation capability providers: deterministic mocks and remote HTTP."""

from .hub import BackendHub, LoggedRequest, mock_hub
from .mock import (
    MockAmbientProvider,
    MockChatProvider,
    MockImageProvider,
    MockSpeechProvider,
    VOICE_FUNDAMENTALS,
    WORD_DURATION_S,
    bilinear_resize,
)
from .requests import (
    PLAYBACK_SAMPLE_RATE,
    SPEECH_SAMPLE_RATE,
    VOICES,
    AmbientAudioRequest,
    BackendProfile,
    ChatRequest,
    ImageGenRequest,
    SpeechRequest,
)
from .transcribe import DEFAULT_SILENCE_TIMEOUT_S, ScriptedTranscriber, SilenceSegmenter

__all__ = [
    "AmbientAudioRequest",
    "BackendHub",
    "BackendProfile",
    "ChatRequest",
    "DEFAULT_SILENCE_TIMEOUT_S",
    "ImageGenRequest",
    "LoggedRequest",
    "MockAmbientProvider",
    "MockChatProvider",
    "MockImageProvider",
    "MockSpeechProvider",
    "PLAYBACK_SAMPLE_RATE",
    "SPEECH_SAMPLE_RATE",
    "ScriptedTranscriber",
    "SilenceSegmenter",
    "SpeechRequest",
    "VOICES",
    "VOICE_FUNDAMENTALS",
    "WORD_DURATION_S",
    "bilinear_resize",
    "mock_hub",
]
