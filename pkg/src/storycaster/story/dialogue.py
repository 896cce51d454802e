"""Scene text parsing and voice casting.

Scene text is screenplay-ish: ``NAME: line`` prefixes and standalone all-caps
cue lines mark dialogue; everything else is narration attributed to the
Narrator.  Consecutive lines by the same speaker merge so each recitation is
one synthesis call.

Voice casting reserves "fable" for the Narrator and deals the remaining five
voices to characters deterministically; a seventh speaker wraps around with a
warning.  Characters stand on a circle (radius 1.5 m, height 1.6 m, starting
at azimuth 0) so dialogue plays out across the room; the Narrator speaks from
the center.
"""

from __future__ import annotations

import re
from dataclasses import dataclass

import numpy as np

from ..backends.hub import BackendHub
from ..backends.requests import VOICES, ChatRequest
from ..errors import BackendError
from ..textutil import stable_hash64
from .context import SceneLine
from .prompts import PromptAssets

NARRATOR = "Narrator"
NARRATOR_VOICE = "fable"
CHARACTER_VOICES = tuple(v for v in VOICES if v != NARRATOR_VOICE)

CIRCLE_RADIUS_M = 1.5
SPEAKER_HEIGHT_M = 1.6

_CUE_PREFIX_RE = re.compile(r"^([A-Z][A-Za-z .'\-]{0,24}?)\s*:\s*(.+)$")
_CUE_LINE_RE = re.compile(r"^[A-Z][A-Z .'\-]{1,29}$")


def parse_scene_dialogue(raw_text: str) -> list[SceneLine]:
    """Split scene text into merged speaker-attributed lines."""
    lines: list[SceneLine] = []
    pending_cue: str | None = None

    def push(speaker: str, kind: str, text: str):
        text = text.strip()
        if not text:
            return
        if lines and lines[-1].speaker.lower() == speaker.lower() and lines[-1].kind == kind:
            lines[-1].text += " " + text
        else:
            lines.append(SceneLine(speaker, kind, text))

    for raw in raw_text.splitlines():
        line = raw.strip()
        if not line:
            pending_cue = None
            continue
        if _CUE_LINE_RE.match(line) and not line.endswith("."):
            pending_cue = line.title().strip()
            continue
        m = _CUE_PREFIX_RE.match(line)
        if m and m.group(1).upper() == m.group(1):
            push(m.group(1).title(), "dialogue", m.group(2))
            pending_cue = None
        elif pending_cue:
            push(pending_cue, "dialogue", line)
        else:
            push(NARRATOR, "narration", line)
    if not lines and raw_text.strip():
        lines.append(SceneLine(NARRATOR, "narration", raw_text.strip()))
    return lines


@dataclass
class VoiceSpec:
    voice: str
    style_instructions: str
    position: np.ndarray


def speaker_positions(speakers: list[str]) -> dict[str, np.ndarray]:
    """Fixed room locations: characters on a circle, Narrator at the center."""
    others = [s for s in speakers if s != NARRATOR]
    n = max(1, len(others))
    out = {NARRATOR: np.array([0.0, 0.0, SPEAKER_HEIGHT_M])}
    for k, name in enumerate(others):
        theta = 2 * np.pi * k / n
        out[name] = np.array(
            [CIRCLE_RADIUS_M * np.cos(theta), CIRCLE_RADIUS_M * np.sin(theta), SPEAKER_HEIGHT_M]
        )
    return out


def _style_for(hub: BackendHub, prompts: PromptAssets, speaker: str, lines_text: str) -> str:
    try:
        return hub.chat(
            ChatRequest(
                system_prompt=prompts.render("voice_style", speaker=speaker, lines=lines_text),
                messages=[],
            )
        ).strip()
    except BackendError:
        return "Neutral, clear delivery."


def assign_voices(
    lines: list[SceneLine],
    seed: int,
    hub: BackendHub | None = None,
    prompts: PromptAssets | None = None,
) -> tuple[dict[str, VoiceSpec], list[str]]:
    """Deterministic voice/style/position casting; returns (assignment, warnings)."""
    speakers: list[str] = []
    for line in lines:
        if line.speaker not in speakers:
            speakers.append(line.speaker)
    if NARRATOR not in speakers:
        speakers.insert(0, NARRATOR)

    positions = speaker_positions(speakers)
    warnings: list[str] = []
    assignment: dict[str, VoiceSpec] = {}
    pool: list[str] = []
    for speaker in speakers:
        if speaker == NARRATOR:
            voice = NARRATOR_VOICE
        else:
            if not pool:
                pool = list(CHARACTER_VOICES)
                if assignment and len(assignment) > 1:
                    warnings.append(f"voice pool exhausted; reusing voices from {speaker!r} on")
            idx = stable_hash64("voice", speaker, str(seed)) % len(pool)
            voice = pool.pop(idx)
        spoken = " ".join(l.text for l in lines if l.speaker == speaker)
        if hub is not None and prompts is not None:
            style = _style_for(hub, prompts, speaker, spoken[:400])
        else:
            style = "Neutral, clear delivery."
        assignment[speaker] = VoiceSpec(voice, style, positions[speaker])
    return assignment, warnings
