"""Story session data carried across acts."""

from __future__ import annotations

from dataclasses import dataclass, field


@dataclass
class SceneLine:
    speaker: str  # "Narrator" for narration
    kind: str  # "dialogue" | "narration"
    text: str


@dataclass
class SceneScript:
    act: int
    raw_text: str
    lines: list[SceneLine]
    sentence_count: int

    def speakers(self) -> list[str]:
        seen: list[str] = []
        for line in self.lines:
            if line.speaker not in seen:
                seen.append(line.speaker)
        return seen


@dataclass
class StoryContext:
    seed: int
    original_storyline: str = ""
    personal_object: str | None = None
    scenes: list[SceneScript] = field(default_factory=list)
    object_mappings: dict[str, str] = field(default_factory=dict)
    converse_history: list[tuple[str, str]] = field(default_factory=list)

    @property
    def acts_completed(self) -> int:
        return len(self.scenes)

    def user_turns(self) -> int:
        return sum(1 for role, _ in self.converse_history if role == "user")
