"""Remote HTTP providers.

Each capability POSTs a JSON body mirroring its request type to a configured
endpoint and expects a JSON reply (see docs/providers.md for the schemas).
Transient failures get one retry with exponential backoff (two attempts
total); auth tokens come from environment variables named per capability
(``STORYCASTER_IMAGE_TOKEN``, ``STORYCASTER_CHAT_TOKEN``,
``STORYCASTER_AUDIO_TOKEN``, ``STORYCASTER_SPEECH_TOKEN``).
"""

from __future__ import annotations

import base64
import io
import json
import logging
import os
import time
import urllib.error
import urllib.request
import wave

import numpy as np

from ..errors import BackendError
from ..geometry.types import PanoramaImage
from ..imageio import depth_grid_to_png_bytes, mask_png_bytes, rgb_from_png_bytes, rgb_png_bytes
from .requests import AmbientAudioRequest, ChatRequest, ImageGenRequest, SpeechRequest

log = logging.getLogger(__name__)

RETRY_BACKOFF_S = 0.5
ATTEMPTS = 2


def _post_json(url: str, body: dict, token_env: str, timeout: float = 60.0) -> dict:
    payload = json.dumps(body).encode("utf-8")
    headers = {"Content-Type": "application/json"}
    token = os.environ.get(token_env)
    if token:
        headers["Authorization"] = f"Bearer {token}"
    last_err: Exception | None = None
    for attempt in range(ATTEMPTS):
        try:
            req = urllib.request.Request(url, data=payload, headers=headers)
            with urllib.request.urlopen(req, timeout=timeout) as resp:
                return json.loads(resp.read().decode("utf-8"))
        except (urllib.error.URLError, urllib.error.HTTPError, TimeoutError, ValueError) as exc:
            last_err = exc
            if attempt + 1 < ATTEMPTS:
                delay = RETRY_BACKOFF_S * (2**attempt)
                log.warning("remote call to %s failed (%s); retrying in %.1fs", url, exc, delay)
                time.sleep(delay)
    raise BackendError(f"remote call to {url} failed after {ATTEMPTS} attempts: {last_err}")


def _b64(data: bytes) -> str:
    return base64.b64encode(data).decode("ascii")


class RemoteImageProvider:
    def __init__(self, endpoints: dict[str, str]):
        self.generate_url = endpoints.get("image_generate")
        self.inpaint_url = endpoints.get("image_inpaint")
        self.upscale_url = endpoints.get("image_upscale")
        if not (self.generate_url and self.inpaint_url and self.upscale_url):
            raise BackendError("remote image provider needs image_generate/inpaint/upscale endpoints")

    def _common_body(self, req: ImageGenRequest) -> dict:
        return {
            "prompt": req.prompt,
            "control_strength": req.control_strength,
            "seed": req.seed,
            "width": req.output_size[0],
            "height": req.output_size[1],
            "depth_png": _b64(depth_grid_to_png_bytes(req.depth.depth)),
            "control_mask_png": _b64(mask_png_bytes(req.control_mask)),
            "inpaint_mask_png": (
                _b64(mask_png_bytes(req.inpaint_mask)) if req.inpaint_mask is not None else None
            ),
        }

    def generate(self, req: ImageGenRequest) -> PanoramaImage:
        reply = _post_json(self.generate_url, self._common_body(req), "STORYCASTER_IMAGE_TOKEN")
        return PanoramaImage(rgb_from_png_bytes(base64.b64decode(reply["image_png"])))

    def inpaint(self, base: PanoramaImage, req: ImageGenRequest) -> PanoramaImage:
        body = self._common_body(req)
        body["base_png"] = _b64(rgb_png_bytes(base.pixels))
        reply = _post_json(self.inpaint_url, body, "STORYCASTER_IMAGE_TOKEN")
        return PanoramaImage(rgb_from_png_bytes(base64.b64decode(reply["image_png"])))

    def upscale(self, img: PanoramaImage, factor: int) -> PanoramaImage:
        body = {"image_png": _b64(rgb_png_bytes(img.pixels)), "factor": factor}
        reply = _post_json(self.upscale_url, body, "STORYCASTER_IMAGE_TOKEN")
        return PanoramaImage(rgb_from_png_bytes(base64.b64decode(reply["image_png"])))


class RemoteChatProvider:
    def __init__(self, endpoints: dict[str, str]):
        self.url = endpoints.get("chat")
        if not self.url:
            raise BackendError("remote chat provider needs a chat endpoint")

    def complete(self, req: ChatRequest) -> str:
        body = {
            "system_prompt": req.system_prompt,
            "messages": [{"role": r, "text": t} for r, t in req.messages],
            "seed": req.seed,
        }
        reply = _post_json(self.url, body, "STORYCASTER_CHAT_TOKEN")
        return str(reply["text"])


def _decode_wav(data: bytes, expect_rate: int, channels: int) -> np.ndarray:
    with wave.open(io.BytesIO(data), "rb") as wf:
        if wf.getframerate() != expect_rate:
            raise BackendError(f"remote audio arrived at {wf.getframerate()} Hz, need {expect_rate}")
        raw = wf.readframes(wf.getnframes())
        arr = np.frombuffer(raw, dtype=np.int16).astype(np.float32) / 32767.0
        if wf.getnchannels() != channels:
            arr = arr.reshape(-1, wf.getnchannels()).mean(axis=1)
            if channels == 2:
                arr = np.stack([arr, arr], axis=1)
        elif channels == 2:
            arr = arr.reshape(-1, 2)
    return arr


class RemoteAmbientProvider:
    def __init__(self, endpoints: dict[str, str]):
        self.url = endpoints.get("ambient")
        if not self.url:
            raise BackendError("remote ambient provider needs an ambient endpoint")

    def generate(self, req: AmbientAudioRequest) -> np.ndarray:
        body = {"prompt": req.prompt, "duration_s": req.duration_s, "seed": req.seed}
        reply = _post_json(self.url, body, "STORYCASTER_AUDIO_TOKEN")
        return _decode_wav(base64.b64decode(reply["wav"]), 48_000, 2)


class RemoteSpeechProvider:
    def __init__(self, endpoints: dict[str, str]):
        self.url = endpoints.get("speech")
        if not self.url:
            raise BackendError("remote speech provider needs a speech endpoint")

    def synthesize(self, req: SpeechRequest) -> np.ndarray:
        body = {
            "text": req.text,
            "voice": req.voice,
            "style_instructions": req.style_instructions,
            "sample_rate_out": req.sample_rate_out,
        }
        reply = _post_json(self.url, body, "STORYCASTER_SPEECH_TOKEN")
        return _decode_wav(base64.b64decode(reply["wav"]), req.sample_rate_out, 1)
