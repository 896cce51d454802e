"""The playback registry: named sources that can be added, replayed, removed.

The registry is a single-writer structure with a logical clock its owner
advances; every mutation is recorded so offline renders can reproduce the
exact schedule.  Rendering takes a snapshot plan and is pure.
"""

from __future__ import annotations

import numpy as np

from ..errors import DuplicateSourceError, UnknownSourceError
from .types import DEFAULT_LISTENER, SAMPLE_RATE, AudioSource, PlanEntry, PlaybackPlan

CHIME_NAME = "chime"
CHIME_DURATION_S = 0.4
CHIME_VOLUME = 0.6
CHIME_FREQS = (880.0, 1320.0)


def make_chime(listener: np.ndarray = DEFAULT_LISTENER) -> AudioSource:
    """The fixed two-tone input-acknowledged chime (0.4 s, 19200 frames)."""
    frames = int(CHIME_DURATION_S * SAMPLE_RATE)
    half = frames // 2
    t = np.arange(frames) / SAMPLE_RATE
    buf = np.where(
        np.arange(frames) < half,
        np.sin(2 * np.pi * CHIME_FREQS[0] * t),
        np.sin(2 * np.pi * CHIME_FREQS[1] * t),
    )
    fade = max(1, frames // 12)
    env = np.ones(frames)
    env[:fade] = np.linspace(0, 1, fade)
    env[-fade:] = np.linspace(1, 0, fade)
    # soften the mid-switch click
    env[half - fade // 2 : half + fade // 2] *= 0.6
    return AudioSource(
        name=CHIME_NAME,
        buffer=(buf * env * 0.8).astype(np.float32),
        position=np.asarray(listener, dtype=np.float64),
        volume=CHIME_VOLUME,
    )


class PlaybackRegistry:
    def __init__(self, listener: np.ndarray = DEFAULT_LISTENER):
        self.listener = np.asarray(listener, dtype=np.float64)
        self._sources: dict[str, AudioSource] = {}
        self._starts: dict[str, float] = {}
        self.clock: float = 0.0
        self.events: list[tuple[float, str, str]] = []

    def __contains__(self, name: str) -> bool:
        return name in self._sources

    def get(self, name: str) -> AudioSource:
        try:
            return self._sources[name]
        except KeyError:
            raise UnknownSourceError(f"no source named {name!r}") from None

    def names(self) -> list[str]:
        return list(self._sources)

    def add(self, source: AudioSource, at: float | None = None) -> None:
        if source.name in self._sources:
            raise DuplicateSourceError(f"duplicate source: {source.name!r} is already registered")
        t = self.clock if at is None else at
        self._sources[source.name] = source
        self._starts[source.name] = t
        self.events.append((t, source.name, "add"))

    def replay(self, name: str, at: float | None = None) -> None:
        if name not in self._sources:
            raise UnknownSourceError(f"no source named {name!r}")
        t = self.clock if at is None else at
        self._starts[name] = t
        self.events.append((t, name, "replay"))

    def remove(self, name: str) -> None:
        if name not in self._sources:
            raise UnknownSourceError(f"no source named {name!r}")
        del self._sources[name]
        del self._starts[name]
        self.events.append((self.clock, name, "remove"))

    def schedule_chime(self) -> float:
        """Queue the chime; overlapping requests wait for the previous one.

        Returns the scheduled start time.
        """
        if CHIME_NAME not in self._sources:
            start = self.clock
            self.add(make_chime(self.listener), at=start)
        else:
            start = max(self.clock, self._starts[CHIME_NAME] + CHIME_DURATION_S)
            self.replay(CHIME_NAME, at=start)
        return start

    def plan(self, duration_s: float | None = None) -> PlaybackPlan:
        """Snapshot the registry schedule as a renderable plan."""
        entries = [
            PlanEntry(name, int(round(self._starts[name] * SAMPLE_RATE)))
            for name in sorted(self._sources, key=lambda n: (self._starts[n], n))
        ]
        if duration_s is None:
            end = 0
            for e in entries:
                src = self._sources[e.source_name]
                if not src.loop:
                    end = max(end, e.offset_frames + src.n_frames)
            total = end
        else:
            total = int(round(duration_s * SAMPLE_RATE))
        return PlaybackPlan(entries, total)
