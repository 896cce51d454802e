"""Between-act coaching: three directions the story could take next."""

from __future__ import annotations

import logging
import re
from dataclasses import dataclass

from ..backends.hub import BackendHub
from ..backends.requests import ChatRequest
from ..errors import StorycasterError
from ..textutil import stable_hash64, truncate_words, word_count
from .context import StoryContext
from .prompts import PromptAssets

log = logging.getLogger(__name__)

OPTION_COUNT = 3
OPTION_MAX_WORDS = 10

ACT_NAMES = {1: "The Setup", 2: "The Confrontation", 3: "The Resolution"}
ACT_DESCRIPTIONS = {
    2: "rising challenges and obstacles",
    3: "bringing the story to a satisfying close",
}

_OPTION_RE = re.compile(r"^\s*([123])[.)]\s*(.+?)\s*$")


@dataclass
class CoachOptions:
    summary: str
    options: list[str]  # exactly 3, each at most 10 words
    act: int  # the act the options are for (2 or 3)


def _parse_reply(raw: str) -> tuple[str, list[str]] | None:
    options: dict[int, str] = {}
    summary_parts: list[str] = []
    for line in raw.splitlines():
        m = _OPTION_RE.match(line)
        if m:
            options[int(m.group(1))] = m.group(2)
        elif not options and line.strip():
            summary_parts.append(line.strip())
    if sorted(options) != [1, 2, 3]:
        return None
    summary = " ".join(summary_parts).split("Here are some options")[0].strip().rstrip(".")
    return summary, [options[1], options[2], options[3]]


def coach(hub: BackendHub, prompts: PromptAssets, ctx: StoryContext) -> CoachOptions:
    """Options for the next act; only valid after acts 1 and 2."""
    if ctx.acts_completed not in (1, 2):
        raise StorycasterError("coaching happens between acts, after act 1 or 2")
    next_act = ctx.acts_completed + 1
    system_prompt = prompts.render(
        "story_coach",
        act_name=ACT_NAMES[next_act],
        act_description=ACT_DESCRIPTIONS[next_act],
        original_storyline=ctx.original_storyline,
        scene_count=ctx.acts_completed,
        current_story_excerpt=ctx.scenes[-1].raw_text if ctx.scenes else "",
    )
    seed = stable_hash64("coach", str(ctx.seed), str(next_act)) % 2**31

    parsed = None
    for attempt in range(2):
        raw = hub.chat(ChatRequest(system_prompt=system_prompt, messages=[], seed=seed + attempt))
        parsed = _parse_reply(raw)
        if parsed is not None:
            break
        log.warning("coach reply unparseable (attempt %d); retrying", attempt + 1)
    if parsed is None:
        raise StorycasterError("coach reply unparseable after retry")

    summary, options = parsed
    if any(word_count(o) > OPTION_MAX_WORDS for o in options):
        raw = hub.chat(ChatRequest(system_prompt=system_prompt, messages=[], seed=seed + 7))
        reparsed = _parse_reply(raw)
        if reparsed is not None:
            summary, options = reparsed
        options = [truncate_words(o, OPTION_MAX_WORDS) for o in options]
    return CoachOptions(summary=summary, options=options, act=next_act)


# -- user reply routing --------------------------------------------------------


@dataclass
class Selected:
    index: int  # 1-based
    text: str  # full text of the option, used to steer the next act


@dataclass
class OwnIdea:
    text: str


@dataclass
class NarratorDecides:
    pass


_DELEGATE_PHRASES = (
    "you decide", "surprise me", "you choose", "up to you", "your choice",
    "narrator decides", "narrator decide", "dealer s choice", "you pick",
)

_NUMBER_WORDS = {
    "1": 1, "one": 1, "first": 1,
    "2": 2, "two": 2, "second": 2,
    "3": 3, "three": 3, "third": 3,
}


def parse_coach_reply(user_text: str, options: CoachOptions) -> Selected | OwnIdea | NarratorDecides:
    """Route a reply to one of the three documented branches."""
    toks = re.findall(r"[a-z0-9']+", user_text.lower())
    joined = " ".join(toks)
    for phrase in _DELEGATE_PHRASES:
        if phrase in joined:
            return NarratorDecides()

    # "option 2", "number two", "pick 3", "the second one", or a bare short answer
    for i, tok in enumerate(toks):
        if tok in ("option", "number", "pick", "choose") and i + 1 < len(toks):
            n = _NUMBER_WORDS.get(toks[i + 1])
            if n:
                return Selected(n, options.options[n - 1])
    m = re.search(r"\b(first|second|third)\s+one\b", joined)
    if m:
        n = _NUMBER_WORDS[m.group(1)]
        return Selected(n, options.options[n - 1])
    if len(toks) <= 3:
        for tok in toks:
            n = _NUMBER_WORDS.get(tok)
            if n:
                return Selected(n, options.options[n - 1])
    return OwnIdea(user_text.strip())
