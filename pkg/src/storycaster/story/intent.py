"""Rule-based intent parsing for the between-scene prompts."""

from __future__ import annotations

import re

_EDIT_PATTERNS = (
    re.compile(r"\bchange\s+(?:the\s+|my\s+)?(?P<phys>[\w ]+?)\s+(?:in)?to\s+(?:a\s+|an\s+|the\s+)?(?P<virt>.+)", re.IGNORECASE),
    re.compile(r"\bturn\s+(?:the\s+|my\s+)?(?P<phys>[\w ]+?)\s+into\s+(?:a\s+|an\s+|the\s+)?(?P<virt>.+)", re.IGNORECASE),
    re.compile(r"\bmake\s+(?:the\s+|my\s+)?(?P<phys>[\w ]+?)\s+(?:a|an|the)\s+(?P<virt>.+)", re.IGNORECASE),
)

_CONTINUE_WORDS = frozenset(
    "continue next proceed onward go keep carry more story forward".split()
)
_END_WORDS = frozenset(
    "end stop done finish finished goodbye bye quit no nope".split()
)
_POSITIVE_WORDS = frozenset("yes yeah yep sure okay ok absolutely ready".split())


def parse_edit_request(text: str) -> tuple[str, str] | None:
    """Extract (physical object, virtual description) from an edit utterance.

    The physical name is normalized to the registry convention (lowercase
    alphanumeric, no spaces).
    """
    for pattern in _EDIT_PATTERNS:
        m = pattern.search(text)
        if m:
            phys = re.sub(r"[^a-z0-9]", "", m.group("phys").lower())
            virt = m.group("virt").strip().rstrip(".!?")
            if phys and virt:
                return phys, virt
    return None


def wants_new_story(text: str) -> bool:
    t = text.lower()
    return bool(re.search(r"\b(another|new|one more)\b.{0,20}\bstory\b", t)) or "again" in t.split()


def wants_continue(text: str) -> bool:
    toks = set(re.findall(r"[a-z']+", text.lower()))
    return bool(toks & _CONTINUE_WORDS) or bool(toks & _POSITIVE_WORDS)


def wants_end(text: str) -> bool:
    toks = set(re.findall(r"[a-z']+", text.lower()))
    return bool(toks & _END_WORDS)
