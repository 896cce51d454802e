"""16-bit PCM WAV serialization for rendered audio."""

from __future__ import annotations

import io
import wave
from pathlib import Path

import numpy as np

from .types import SAMPLE_RATE


def wav_bytes(frames: np.ndarray, sample_rate: int = SAMPLE_RATE) -> bytes:
    arr = np.asarray(frames, dtype=np.float64)
    if arr.ndim == 1:
        arr = arr[:, None]
    pcm = np.clip(np.rint(arr * 32767.0), -32768, 32767).astype("<i2")
    buf = io.BytesIO()
    with wave.open(buf, "wb") as wf:
        wf.setnchannels(arr.shape[1])
        wf.setsampwidth(2)
        wf.setframerate(sample_rate)
        wf.writeframes(pcm.tobytes())
    return buf.getvalue()


def write_wav(path: str | Path, frames: np.ndarray, sample_rate: int = SAMPLE_RATE) -> None:
    Path(path).write_bytes(wav_bytes(frames, sample_rate))


def read_wav(path: str | Path) -> tuple[np.ndarray, int]:
    """Returns (float32 frames in [-1, 1], sample rate); stereo shape (N, 2)."""
    with wave.open(str(path), "rb") as wf:
        rate = wf.getframerate()
        raw = wf.readframes(wf.getnframes())
        arr = np.frombuffer(raw, dtype="<i2").astype(np.float32) / 32767.0
        if wf.getnchannels() > 1:
            arr = arr.reshape(-1, wf.getnchannels())
    return arr, rate
