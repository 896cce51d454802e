"""Audio engine domain types.

All playback buffers are 48 kHz float32 in [-1, 1]; mono buffers have shape
(N,) and stereo (N, 2).  Plan offsets are stored in frames so sequential
scheduling is sample-exact, with seconds derived views.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from ..errors import StorycasterError

SAMPLE_RATE = 48_000

#: Where the (single) listener sits in the room frame.
DEFAULT_LISTENER = np.array([0.0, 0.0, 1.2])


@dataclass
class AudioSource:
    """A named, positioned, volume-scaled 48 kHz buffer."""

    name: str
    buffer: np.ndarray
    position: np.ndarray
    volume: float = 1.0
    loop: bool = False

    def __post_init__(self):
        if not self.name:
            raise StorycasterError("audio source needs a name")
        if not 0.0 <= self.volume <= 1.0:
            raise StorycasterError("volume must lie in [0, 1]")
        self.buffer = np.asarray(self.buffer, dtype=np.float32)
        if self.buffer.ndim not in (1, 2):
            raise StorycasterError("buffer must be (N,) mono or (N, 2) stereo")
        self.position = np.asarray(self.position, dtype=np.float64).reshape(3)

    @property
    def n_frames(self) -> int:
        return self.buffer.shape[0]

    @property
    def duration_s(self) -> float:
        return self.n_frames / SAMPLE_RATE


@dataclass
class PlanEntry:
    source_name: str
    offset_frames: int

    @property
    def offset_s(self) -> float:
        return self.offset_frames / SAMPLE_RATE


@dataclass
class PlaybackPlan:
    """Ordered schedule of source starts plus the total render length."""

    entries: list[PlanEntry] = field(default_factory=list)
    total_frames: int = 0

    def __post_init__(self):
        offsets = [e.offset_frames for e in self.entries]
        if any(b < a for a, b in zip(offsets, offsets[1:])):
            raise StorycasterError("plan offsets must be non-decreasing")

    @property
    def total_duration_s(self) -> float:
        return self.total_frames / SAMPLE_RATE


@dataclass
class MixerOutput:
    """Offline-rendered stereo feed plus the playback event log."""

    frames: np.ndarray  # (N, 2) float32
    events: list[tuple[float, str, str]] = field(default_factory=list)  # (t_s, source, action)

    def event_log_text(self) -> str:
        return "".join(f"{t:.6f}\t{src}\t{action}\n" for t, src, action in self.events)
