"""The capability hub: one object the rest of the system calls for generation.

The hub owns provider selection (mock vs remote per capability) and keeps a
request log; acceptance checks read the log to confirm configured values
(control strengths, voices, sample rates) actually reach requests.
"""

from __future__ import annotations

import threading
from dataclasses import dataclass, field

import numpy as np

from ..geometry.types import PanoramaImage
from .mock import MockAmbientProvider, MockChatProvider, MockImageProvider, MockSpeechProvider
from .remote import (
    RemoteAmbientProvider,
    RemoteChatProvider,
    RemoteImageProvider,
    RemoteSpeechProvider,
)
from .requests import (
    AmbientAudioRequest,
    BackendProfile,
    ChatRequest,
    ImageGenRequest,
    SpeechRequest,
)


@dataclass
class LoggedRequest:
    capability: str
    request: object


@dataclass
class BackendHub:
    profile: BackendProfile = field(default_factory=BackendProfile)
    #: provider instances that replace the profile-selected ones (tests)
    overrides: dict = field(default_factory=dict)

    def __post_init__(self):
        ep = self.profile.endpoints
        self._chat = MockChatProvider() if self.profile.chat == "mock" else RemoteChatProvider(ep)
        self._image = MockImageProvider() if self.profile.image == "mock" else RemoteImageProvider(ep)
        self._ambient = (
            MockAmbientProvider() if self.profile.ambient == "mock" else RemoteAmbientProvider(ep)
        )
        self._speech = (
            MockSpeechProvider() if self.profile.speech == "mock" else RemoteSpeechProvider(ep)
        )
        for cap, provider in self.overrides.items():
            setattr(self, f"_{cap}", provider)
        self.request_log: list[LoggedRequest] = []
        self._log_lock = threading.Lock()

    def _log(self, capability: str, request) -> None:
        with self._log_lock:
            self.request_log.append(LoggedRequest(capability, request))

    def chat(self, req: ChatRequest) -> str:
        self._log("chat", req)
        return self._chat.complete(req)

    def generate_image(self, req: ImageGenRequest) -> PanoramaImage:
        self._log("image.generate", req)
        return self._image.generate(req)

    def inpaint_image(self, base: PanoramaImage, req: ImageGenRequest) -> PanoramaImage:
        self._log("image.inpaint", req)
        return self._image.inpaint(base, req)

    def upscale(self, img: PanoramaImage, factor: int) -> PanoramaImage:
        self._log("image.upscale", factor)
        return self._image.upscale(img, factor)

    def generate_ambient(self, req: AmbientAudioRequest) -> np.ndarray:
        self._log("audio.ambient", req)
        return self._ambient.generate(req)

    def synthesize_speech(self, req: SpeechRequest) -> np.ndarray:
        self._log("speech", req)
        return self._speech.synthesize(req)

    def logged(self, capability: str) -> list:
        return [e.request for e in self.request_log if e.capability == capability]


def mock_hub() -> BackendHub:
    return BackendHub(BackendProfile())
