"""Session states and the effect commands the narrator emits.

The legal transition table lives in docs/state-machine.md; the narrator is
its only implementation.  Effects are commands for the runtime: the narrator
never performs generation or audio work itself.
"""

from __future__ import annotations

from dataclasses import dataclass, field

STATE_NAMES = (
    "Welcome",
    "Tutorial",
    "AwaitPersonalObject",
    "Converse",
    "ConfirmScene",
    "GeneratingScene",
    "ScenePlayback",
    "PostScene",
    "CoachChoice",
    "ObjectEdit",
    "WrapUp",
    "Ended",
)

#: states in which the session accepts user input
INPUT_STATES = frozenset(
    {"Welcome", "Tutorial", "AwaitPersonalObject", "Converse", "ConfirmScene",
     "PostScene", "CoachChoice", "WrapUp"}
)


@dataclass(frozen=True)
class State:
    name: str
    act: int = 0  # meaningful for scene-bound states, 1..3

    def __post_init__(self):
        if self.name not in STATE_NAMES:
            raise ValueError(f"unknown state {self.name!r}")

    def label(self) -> str:
        return f"{self.name}({self.act})" if self.act else self.name

    @property
    def accepts_input(self) -> bool:
        return self.name in INPUT_STATES


# -- effects -----------------------------------------------------------------


@dataclass
class Chime:
    kind: str = "chime"


@dataclass
class Speak:
    text: str
    mode: str  # "tutorial" | "storytelling"
    speaker: str = "Narrator"
    kind: str = "speak"


@dataclass
class GenerateScene:
    act: int
    direction: str  # user steer for this act (storyline itself for act 1)
    kind: str = "generate_scene"


@dataclass
class CoachPrompt:
    act: int  # the upcoming act the options steer
    summary: str = ""
    options: list[str] = field(default_factory=list)
    kind: str = "coach"


@dataclass
class ObjectEditRequest:
    physical: str
    virtual: str
    kind: str = "object_edit"


@dataclass
class PlayMusic:
    track_index: int
    kind: str = "music"


@dataclass
class WelcomeVisual:
    kind: str = "welcome_visual"


@dataclass
class NewStory:
    kind: str = "new_story"


@dataclass
class EndSession:
    kind: str = "end"


Effect = object
