"""Request/response types shared by all generation providers."""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from ..errors import BackendError
from ..geometry.types import CylindricalDepthImage

VOICES = ("alloy", "echo", "fable", "onyx", "nova", "shimmer")

SPEECH_SAMPLE_RATE = 24_000
PLAYBACK_SAMPLE_RATE = 48_000

MAX_IMAGE_DIM = 8192


@dataclass
class ImageGenRequest:
    """Depth-conditioned panorama generation / inpainting request."""

    prompt: str
    depth: CylindricalDepthImage
    control_strength: float
    control_mask: np.ndarray  # (H, W) bool/0-1, depth dimensions
    seed: int
    output_size: tuple[int, int]  # (width, height)
    inpaint_mask: np.ndarray | None = None  # inside = regenerate

    def __post_init__(self):
        if not self.prompt:
            raise BackendError("prompt must be nonempty")
        if not 0.0 <= self.control_strength <= 1.0:
            raise BackendError("control_strength must lie in [0, 1]")
        self.control_mask = np.asarray(self.control_mask).astype(bool)
        if self.control_mask.shape != self.depth.depth.shape:
            raise BackendError("control mask must match depth dimensions")
        if self.inpaint_mask is not None:
            self.inpaint_mask = np.asarray(self.inpaint_mask).astype(bool)
            if self.inpaint_mask.shape != self.depth.depth.shape:
                raise BackendError("inpaint mask must match depth dimensions")
        w, h = self.output_size
        if w <= 0 or h <= 0 or w > MAX_IMAGE_DIM or h > MAX_IMAGE_DIM:
            raise BackendError(f"output size {self.output_size} out of range")
        self.seed = int(self.seed)


@dataclass
class AmbientAudioRequest:
    """Looping soundscape request (48 kHz stereo output)."""

    prompt: str
    duration_s: float
    seed: int

    def __post_init__(self):
        if not self.prompt:
            raise BackendError("prompt must be nonempty")
        if not 0.0 < self.duration_s <= 120.0:
            raise BackendError("duration must lie in (0, 120] seconds")
        self.seed = int(self.seed)


@dataclass
class SpeechRequest:
    """Text-to-speech request (24 kHz mono output)."""

    text: str
    voice: str
    style_instructions: str = ""
    sample_rate_out: int = SPEECH_SAMPLE_RATE

    def __post_init__(self):
        if not self.text.strip():
            raise BackendError("speech text must be nonempty")
        if self.voice not in VOICES:
            raise BackendError(f"unknown voice {self.voice!r}; choose from {VOICES}")


@dataclass
class ChatRequest:
    """A chat completion: system prompt plus (role, text) turns."""

    system_prompt: str
    messages: list[tuple[str, str]] = field(default_factory=list)
    seed: int = 0

    def __post_init__(self):
        for role, _ in self.messages:
            if role not in ("user", "assistant"):
                raise BackendError(f"bad message role {role!r}")
        self.seed = int(self.seed)


@dataclass
class BackendProfile:
    """Which provider implements each capability."""

    chat: str = "mock"
    image: str = "mock"
    ambient: str = "mock"
    speech: str = "mock"
    transcribe: str = "scripted"
    endpoints: dict[str, str] = field(default_factory=dict)

    def __post_init__(self):
        for cap in ("chat", "image", "ambient", "speech"):
            if getattr(self, cap) not in ("mock", "remote"):
                raise BackendError(f"capability {cap} must be mock or remote")
