"""Constant-power stereo panning.

The listener faces +x with +y to their left.  A source's azimuth about +z
maps to a pan angle alpha in [0, pi/2] (0 = hard left, pi/2 = hard right),
giving gains (cos(alpha), sin(alpha)) scaled by volume and a 1/max(1, r)
distance rolloff, so left^2 + right^2 = (volume / max(1, r))^2 everywhere.
Sources behind the listener fold to center.  This is the desk-scale stand-in
for the room's hardware spatial audio: deterministic and offline-renderable
while keeping "characters speak from different places" semantics.
"""

from __future__ import annotations

import numpy as np

from .types import DEFAULT_LISTENER, AudioSource


def pan_gains(position: np.ndarray, listener: np.ndarray, volume: float) -> tuple[float, float]:
    rel = np.asarray(position, dtype=np.float64) - np.asarray(listener, dtype=np.float64)
    r = float(np.linalg.norm(rel))
    g = volume / max(1.0, r)
    if np.hypot(rel[0], rel[1]) < 1e-12:
        alpha = np.pi / 4  # directly above/below or at the listener: center
    else:
        psi = np.arctan2(rel[1], rel[0])  # +pi/2 = left, -pi/2 = right
        alpha = (1.0 - np.sin(psi)) * np.pi / 4
    return g * float(np.cos(alpha)), g * float(np.sin(alpha))


def spatialize(source: AudioSource, listener: np.ndarray = DEFAULT_LISTENER) -> tuple[float, float]:
    """Per-channel (left, right) gains for a source heard by the listener."""
    return pan_gains(source.position, listener, source.volume)
