"""Scene text generation and validation.

Scenes target 8-10 sentences.  Overlong generations get one regeneration and
are then hard-truncated at sentence ten; undersized ones get one
regeneration and are then accepted with a warning, so a stubborn backend can
never wedge the session.
"""

from __future__ import annotations

import logging
from typing import Callable

from ..backends.hub import BackendHub
from ..backends.requests import ChatRequest
from ..errors import BackendError
from ..textutil import split_sentences, stable_hash64
from .context import SceneScript, StoryContext
from .dialogue import parse_scene_dialogue
from .prompts import PromptAssets

log = logging.getLogger(__name__)

SENTENCES_MIN = 8
SENTENCES_MAX = 10


def build_storyteller_prompt(
    prompts: PromptAssets, ctx: StoryContext, act: int, user_input: str
) -> str:
    """Render the storyteller template for one act.

    For act 1 the user direction is the original storyline itself.
    """
    if not (1 <= act <= 3):
        raise ValueError("act must be 1..3")
    if not ctx.original_storyline:
        raise ValueError("original storyline must be set before scene generation")
    direction = ctx.original_storyline if act == 1 else user_input
    previous = ""
    if ctx.scenes:
        chunks = [f"Scene {s.act}: {s.raw_text}" for s in ctx.scenes]
        previous = "Previous scenes:\n" + "\n\n".join(chunks) + "\n"
    personal = ""
    if ctx.personal_object:
        personal = f"Personal object to weave in: {ctx.personal_object}\n"
    user_context = f" (User direction: {direction})" if direction else ""
    return prompts.render(
        "storyteller",
        scene_number=act,
        few_shot_examples=prompts.few_shot_examples(ctx.seed, act),
        original_storyline=ctx.original_storyline,
        previous_context=previous,
        personal_object_context=personal,
        user_context=user_context,
    )


def generate_scene_text(
    hub: BackendHub, prompts: PromptAssets, ctx: StoryContext, act: int, user_input: str
) -> tuple[SceneScript, list[str]]:
    """Generate and validate one act's scene; returns (scene, warnings)."""
    prompt = build_storyteller_prompt(prompts, ctx, act, user_input)
    seed = stable_hash64("scene", str(ctx.seed), str(act)) % 2**31

    def request(attempt: int) -> str:
        return hub.chat(
            ChatRequest(system_prompt=prompt, messages=[], seed=seed + attempt)
        )

    return validate_scene(request(0), act, regenerate=lambda: request(1))


def _truncate_sentences(text: str, limit: int) -> str:
    return " ".join(split_sentences(text)[:limit])


def validate_scene(
    raw: str, act: int, regenerate: Callable[[], str] | None = None
) -> tuple[SceneScript, list[str]]:
    """Enforce the sentence budget; returns the parsed scene plus warnings."""
    warnings: list[str] = []
    text = (raw or "").strip()
    if not text and regenerate is not None:
        text = (regenerate() or "").strip()
        regenerate = None
        warnings.append("scene regenerated: first generation was empty")
    if not text:
        raise BackendError("scene generation returned empty text twice")

    count = len(split_sentences(text))
    if not (SENTENCES_MIN <= count <= SENTENCES_MAX) and regenerate is not None:
        retry = (regenerate() or "").strip()
        if retry:
            warnings.append(f"scene regenerated: {count} sentences out of range")
            text = retry
            count = len(split_sentences(text))
    if count > SENTENCES_MAX:
        text = _truncate_sentences(text, SENTENCES_MAX)
        count = len(split_sentences(text))
        warnings.append(f"scene truncated to {SENTENCES_MAX} sentences")
    elif count < SENTENCES_MIN:
        warnings.append(f"scene accepted with only {count} sentences")

    lines = parse_scene_dialogue(text)
    for w in warnings:
        log.warning("act %d: %s", act, w)
    return SceneScript(act=act, raw_text=text, lines=lines, sentence_count=count), warnings
