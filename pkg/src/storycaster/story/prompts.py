"""Bundled prompt templates and few-shot scripts.

Templates are plain text with ``{placeholder}`` slots; rendering is strict
(a missing placeholder raises).  The script library backs storyteller
few-shot prompting: each generation samples two of the four scripts without
replacement, seeded, and takes each one's first 25 lines.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from pathlib import Path

import numpy as np

from ..textutil import stable_hash64

TEMPLATE_NAMES = (
    "narrator_voice",
    "tutorial_voice",
    "converser",
    "storyteller",
    "image_prompt",
    "ambient_audio",
    "story_coach",
    "scene_classifier",
    "confirmation_classifier",
    "voice_style",
    "object_mapper",
)

SCRIPT_LINES_USED = 25
SCRIPTS_PER_PROMPT = 2


class _StrictDict(dict):
    def __missing__(self, key):
        raise KeyError(f"template placeholder {{{key}}} has no value")


@dataclass
class PromptAssets:
    templates: dict[str, str]
    scripts: dict[str, str] = field(default_factory=dict)

    @classmethod
    def load(cls, prompt_dir: str | Path, script_dir: str | Path | None = None) -> "PromptAssets":
        prompt_dir = Path(prompt_dir)
        templates = {}
        for name in TEMPLATE_NAMES:
            path = prompt_dir / f"{name}.txt"
            templates[name] = path.read_text()
        scripts = {}
        if script_dir is not None:
            for path in sorted(Path(script_dir).glob("*.txt")):
                scripts[path.stem] = path.read_text()
        return cls(templates, scripts)

    def render(self, name: str, **values) -> str:
        return self.templates[name].format_map(_StrictDict(values))

    def pick_scripts(self, seed: int, act: int) -> list[str]:
        """Two script names, seeded-uniform without replacement."""
        names = sorted(self.scripts)
        if len(names) < SCRIPTS_PER_PROMPT:
            raise ValueError(f"need at least {SCRIPTS_PER_PROMPT} bundled scripts")
        rng = np.random.default_rng(stable_hash64("scripts", str(seed), str(act)) % 2**63)
        idx = rng.choice(len(names), size=SCRIPTS_PER_PROMPT, replace=False)
        return [names[int(i)] for i in idx]

    def few_shot_examples(self, seed: int, act: int) -> str:
        parts = []
        for name in self.pick_scripts(seed, act):
            head = "\n".join(self.scripts[name].splitlines()[:SCRIPT_LINES_USED])
            parts.append(head)
        return "\n\n---\n\n".join(parts)
