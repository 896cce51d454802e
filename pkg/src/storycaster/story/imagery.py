"""Scene text to generation prompts: visuals and ambience.

The visual prompt is capped at 50 words; a second backend call classifies it
indoor/outdoor, which decides whether wall removal applies to the depth
guidance for this scene.
"""

from __future__ import annotations

import logging

from ..backends.hub import BackendHub
from ..backends.requests import ChatRequest
from ..errors import BackendError
from ..textutil import truncate_words, word_count
from .prompts import PromptAssets

log = logging.getLogger(__name__)

IMAGE_PROMPT_MAX_WORDS = 50
AMBIENT_FALLBACK = "gentle neutral room tone"


def build_image_prompt(
    hub: BackendHub, prompts: PromptAssets, scene_text: str
) -> tuple[str, bool]:
    """Returns (visual prompt of at most 50 words, outdoor flag)."""
    if not scene_text.strip():
        raise ValueError("scene text must be nonempty")
    draft = hub.chat(
        ChatRequest(
            system_prompt=prompts.render("image_prompt", story_text=scene_text),
            messages=[],
        )
    ).strip()
    if draft.lower().startswith("prompt:"):
        draft = draft.split(":", 1)[1].strip()
    prompt = " ".join(draft.split())
    if word_count(prompt) > IMAGE_PROMPT_MAX_WORDS:
        prompt = truncate_words(prompt, IMAGE_PROMPT_MAX_WORDS)

    verdict = hub.chat(
        ChatRequest(
            system_prompt=prompts.render("scene_classifier", prompt_text=prompt),
            messages=[],
        )
    )
    outdoor = verdict.strip().upper().startswith("OUTDOOR")
    return prompt, outdoor


def build_ambient_prompt(hub: BackendHub, prompts: PromptAssets, scene_text: str) -> str:
    """One-line soundscape description; falls back to a neutral room tone."""
    if not scene_text.strip():
        return AMBIENT_FALLBACK
    try:
        raw = hub.chat(
            ChatRequest(
                system_prompt=prompts.render("ambient_audio", story_text=scene_text),
                messages=[],
            )
        )
    except BackendError as exc:
        log.warning("ambient prompt backend failed: %s", exc)
        return AMBIENT_FALLBACK
    line = raw.strip().splitlines()[0].strip() if raw.strip() else ""
    if line.lower().startswith("prompt:"):
        line = line.split(":", 1)[1].strip()
    return line or AMBIENT_FALLBACK
