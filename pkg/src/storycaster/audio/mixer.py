"""Offline rendering of playback plans.

Sources mix additively at their scheduled offsets with spatial gains; loops
repeat for the plan duration with an event-log entry per restart.  A hard
master limiter normalizes peaks above full scale (and logs that it did).
Rendering is deterministic: identical plan + registry -> identical output.
"""

from __future__ import annotations

import numpy as np

from ..errors import UnknownSourceError
from .registry import PlaybackRegistry
from .spatial import pan_gains
from .types import SAMPLE_RATE, AudioSource, MixerOutput, PlanEntry, PlaybackPlan


def _as_stereo(source: AudioSource, listener: np.ndarray) -> np.ndarray:
    """Apply spatial gains: mono gets panned, stereo keeps its image."""
    buf = source.buffer
    if buf.ndim == 1:
        left, right = pan_gains(source.position, listener, source.volume)
        return np.stack([buf * left, buf * right], axis=1)
    rel = np.asarray(source.position, dtype=np.float64) - listener
    g = source.volume / max(1.0, float(np.linalg.norm(rel)))
    return buf * g


def render_plan(plan: PlaybackPlan, registry: PlaybackRegistry) -> MixerOutput:
    for entry in plan.entries:
        if entry.source_name not in registry:
            raise UnknownSourceError(f"plan references unknown source {entry.source_name!r}")

    total = plan.total_frames
    out = np.zeros((total, 2), dtype=np.float64)
    events: list[tuple[float, str, str]] = []

    for entry in plan.entries:
        source = registry.get(entry.source_name)
        stereo = _as_stereo(source, registry.listener)
        n = len(stereo)
        if n == 0:
            continue
        pos = entry.offset_frames
        events.append((pos / SAMPLE_RATE, source.name, "start"))
        first = True
        while pos < total:
            take = min(n, total - pos)
            if take <= 0:
                break
            out[pos : pos + take] += stereo[:take]
            if not first:
                events.append((pos / SAMPLE_RATE, source.name, "loop"))
            first = False
            pos += n
            if not source.loop:
                break
        stop = min(pos, total)
        events.append((stop / SAMPLE_RATE, source.name, "stop"))

    peak = float(np.abs(out).max()) if total else 0.0
    if peak > 1.0:
        out /= peak
        events.append((total / SAMPLE_RATE, "master", "limit"))

    events.sort(key=lambda e: (e[0], e[1], e[2]))
    return MixerOutput(out.astype(np.float32), events)


def sequential_plan(sources: list[AudioSource], start_frame: int = 0) -> PlaybackPlan:
    """Back-to-back schedule: each source starts exactly when the previous ends."""
    entries = []
    pos = start_frame
    for src in sources:
        entries.append(PlanEntry(src.name, pos))
        pos += src.n_frames
    return PlaybackPlan(entries, pos)
