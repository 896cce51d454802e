"""Small text helpers shared by the story engine and the mock providers."""

from __future__ import annotations

import hashlib
import re

_WORD_RE = re.compile(r"[A-Za-z']+")

STOPWORDS = frozenset(
    """a an the and or but if then else of in on at to from with for as is are was
    were be been being am it its this that these those there here she he they we
    you i me my your his her their our us him them by about into over under very
    so not no yes do does did done have has had will would can could should may
    might must up down out off too also just only more most some any all each
    own same than when where who whom which what while once during before after
    again further both few such nor now o s t d ll m re ve""".split()
)

_ABBREVIATIONS = frozenset(
    "dr mr mrs ms prof st sgt capt lt col gen rev fr jr sr vs etc no inc co mt ft".split()
)

_SENTENCE_END_RE = re.compile(r"[.!?]+")


def stable_hash64(*parts: str) -> int:
    """Platform-stable 64-bit hash of text parts (order matters)."""
    h = hashlib.sha256("\x1f".join(parts).encode("utf-8")).digest()
    return int.from_bytes(h[:8], "big")


def tokenize(text: str) -> list[str]:
    return [t.lower() for t in _WORD_RE.findall(text)]


def content_words(text: str, min_len: int = 3) -> list[str]:
    """Lowercased non-stopword tokens in order, deduplicated."""
    seen = set()
    out = []
    for tok in tokenize(text):
        if len(tok) < min_len or tok in STOPWORDS or tok in seen:
            continue
        seen.add(tok)
        out.append(tok)
    return out


def truncate_words(text: str, limit: int) -> str:
    words = text.split()
    if len(words) <= limit:
        return text
    return " ".join(words[:limit])


def word_count(text: str) -> int:
    return len(text.split())


def split_sentences(text: str) -> list[str]:
    """Terminator-based sentence split.

    A run of ``.!?`` ends a sentence unless the word immediately before it is
    a known abbreviation (honorifics like "Dr." do not terminate).  Dialogue
    counts as written; quotes do not suppress terminators.
    """
    sentences = []
    start = 0
    for m in _SENTENCE_END_RE.finditer(text):
        before = text[start : m.start()]
        last = re.findall(r"[A-Za-z']+", before)
        if m.group().startswith(".") and last and last[-1].lower() in _ABBREVIATIONS:
            continue
        seg = text[start : m.end()].strip()
        if seg:
            sentences.append(seg)
        start = m.end()
    tail = text[start:].strip()
    if tail:
        sentences.append(tail)
    return sentences


def count_sentences(text: str) -> int:
    return len(split_sentences(text))


# story-element slot detection used by the conversational readiness rule and
# by the mock conversation provider

SETTING_WORDS = frozenset(
    """cave forest castle ship station city village island mars moon ocean sea
    mountain desert tavern kitchen school library house room space jungle beach
    temple tower farm market harbor swamp glacier canyon valley palace mine
    lighthouse garden meadow lab laboratory planet galaxy reef cottage attic
    basement workshop bridge deck train volcano ruins arctic tundra bazaar""".split()
)

CHARACTER_WORDS = frozenset(
    """i me hero heroine dragon wizard robot princess prince knight captain
    detective queen king alien pirate girl boy cat dog explorer scientist witch
    monster sidekick friend family sister brother mother father crew mentor
    guardian ghost fox wolf owl keeper sailor traveler ranger apprentice
    merchant inventor astronaut otter villain companions""".split()
)

ACTION_WORDS = frozenset(
    """explore exploring explores find finding guard guarding search searching
    escape escaping rescue rescuing fight fighting discover discovering journey
    race racing solve solving build building steal stealing hunt hunting sail
    sailing fly flying chase chasing protect protecting uncover investigate
    investigating climb climbing dig digging map mapping tame taming repair
    repairing deliver delivering win winning survive surviving looking quest""".split()
)

MOOD_WORDS = frozenset(
    """scary happy dark mysterious cozy epic funny sad tense calm magical
    adventurous spooky dramatic whimsical eerie exciting hopeful gloomy
    peaceful thrilling lighthearted grim romantic heroic ominous playful
    wondrous serene suspenseful cheerful haunting""".split()
)

SLOT_NAMES = ("setting", "characters", "action", "mood")


def detect_story_slots(text: str) -> set[str]:
    """Which of the four story elements the text mentions."""
    toks = set(tokenize(text))
    slots = set()
    if toks & SETTING_WORDS:
        slots.add("setting")
    if toks & CHARACTER_WORDS:
        slots.add("characters")
    if toks & ACTION_WORDS:
        slots.add("action")
    if toks & MOOD_WORDS:
        slots.add("mood")
    return slots


OUTDOOR_WORDS = frozenset(
    """forest space mars ocean sea sky mountain mountains desert field beach
    jungle river canyon island meadow glacier outdoors outside stars moon
    plain plains prairie savanna tundra reef lagoon cliff cliffs volcano
    orbit nebula galaxy horizon garden valley lake waterfall woods""".split()
)


def looks_outdoor(text: str) -> bool:
    return bool(set(tokenize(text)) & OUTDOOR_WORDS)
