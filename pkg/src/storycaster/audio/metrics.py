"""Loudness/continuity measurements used by loop contracts and tests."""

from __future__ import annotations

import numpy as np

from .types import SAMPLE_RATE

SEAM_WINDOW_S = 0.01


def rms(x: np.ndarray) -> float:
    x = np.asarray(x, dtype=np.float64)
    return float(np.sqrt(np.mean(np.square(x)))) if x.size else 0.0


def loop_seam_rms(buffer: np.ndarray, sample_rate: int = SAMPLE_RATE) -> float:
    """Envelope discontinuity across the loop seam.

    Compares the RMS level of the last and first seam windows (10 ms each):
    a loopable buffer hands playback back to its start at the same loudness.
    """
    n = max(1, int(SEAM_WINDOW_S * sample_rate))
    arr = np.asarray(buffer, dtype=np.float64)
    if len(arr) < 2 * n:
        return 0.0
    return abs(rms(arr[:n]) - rms(arr[-n:]))
