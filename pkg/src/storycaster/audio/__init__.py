"""Offline spatial audio: registry, resampling, panning, mixing."""

from .metrics import loop_seam_rms, rms
from .mixer import render_plan, sequential_plan
from .registry import (
    CHIME_DURATION_S,
    CHIME_NAME,
    CHIME_VOLUME,
    PlaybackRegistry,
    make_chime,
)
from .resample import resample_24_to_48
from .spatial import pan_gains, spatialize
from .types import (
    DEFAULT_LISTENER,
    SAMPLE_RATE,
    AudioSource,
    MixerOutput,
    PlanEntry,
    PlaybackPlan,
)
from .wavio import read_wav, wav_bytes, write_wav

__all__ = [
    "AudioSource",
    "CHIME_DURATION_S",
    "CHIME_NAME",
    "CHIME_VOLUME",
    "DEFAULT_LISTENER",
    "MixerOutput",
    "PlanEntry",
    "PlaybackPlan",
    "PlaybackRegistry",
    "SAMPLE_RATE",
    "loop_seam_rms",
    "make_chime",
    "pan_gains",
    "read_wav",
    "render_plan",
    "resample_24_to_48",
    "rms",
    "sequential_plan",
    "spatialize",
    "wav_bytes",
    "write_wav",
]
