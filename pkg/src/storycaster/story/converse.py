"""The opening conversation: gathering the story premise.

The backend decides READY / NEED MORE per the conversation template, with two
rule-based guards layered on top: a READY override once all four story
elements (setting, characters, action, mood) are detectable and at least two
user turns have passed, and a forced READY at six turns so nobody gets stuck
in the interview.
"""

from __future__ import annotations

import logging

from ..backends.hub import BackendHub
from ..backends.requests import ChatRequest
from ..errors import BackendError
from ..textutil import SLOT_NAMES, detect_story_slots, stable_hash64
from .prompts import PromptAssets

log = logging.getLogger(__name__)

READY = "READY"
NEED_MORE = "NEED_MORE"

MIN_TURNS_FOR_OVERRIDE = 2
FORCE_READY_TURNS = 6

_APOLOGY = "I'm sorry, I lost my train of thought. Could you tell me more about your story?"


def converse_step(
    hub: BackendHub,
    prompts: PromptAssets,
    history: list[tuple[str, str]],
    user_input: str,
    seed: int = 0,
) -> tuple[str, str]:
    """One conversational exchange; returns (reply_text, READY | NEED_MORE).

    ``history`` holds prior turns; the current ``user_input`` is appended by
    the caller afterwards.
    """
    messages = list(history) + [("user", user_input)]
    user_texts = [text for role, text in messages if role == "user"]
    turns = len(user_texts)

    backend_verdict = NEED_MORE
    reply = _APOLOGY
    try:
        raw = hub.chat(
            ChatRequest(
                system_prompt=prompts.render("converser"),
                messages=messages,
                seed=stable_hash64("converse", str(seed)) % 2**31,
            )
        )
        head, _, rest = raw.partition("\n")
        if "READY" in head.upper() and "NEED" not in head.upper():
            backend_verdict = READY
        reply = rest.strip() or head.strip()
    except BackendError as exc:
        log.warning("conversation backend failed: %s", exc)

    slots = detect_story_slots(" ".join(user_texts))
    rule_ready = len(slots) == len(SLOT_NAMES) and turns >= MIN_TURNS_FOR_OVERRIDE
    verdict = READY if (backend_verdict == READY or rule_ready) else NEED_MORE
    if verdict == NEED_MORE and turns >= FORCE_READY_TURNS:
        verdict = READY
        reply = (
            "I have plenty to work with already! Are you ready to bring your story to life?"
        )
    return reply, verdict


def parse_confirmation(hub: BackendHub, prompts: PromptAssets, text: str) -> str:
    """Classify a readiness reply as positive, negative, or unclear."""
    try:
        raw = hub.chat(
            ChatRequest(
                system_prompt=prompts.render("confirmation_classifier", reply_text=text),
                messages=[],
            )
        )
    except BackendError:
        return "unclear"
    word = raw.strip().split()[0].upper() if raw.strip() else ""
    if word.startswith("POSITIVE"):
        return "positive"
    if word.startswith("NEGATIVE"):
        return "negative"
    return "unclear"
