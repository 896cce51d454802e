"""Story orchestration: the narrator state machine and its helpers."""

from .coach import (
    ACT_NAMES,
    CoachOptions,
    NarratorDecides,
    OwnIdea,
    Selected,
    coach,
    parse_coach_reply,
)
from .context import SceneLine, SceneScript, StoryContext
from .converse import NEED_MORE, READY, converse_step, parse_confirmation
from .dialogue import (
    NARRATOR,
    NARRATOR_VOICE,
    VoiceSpec,
    assign_voices,
    parse_scene_dialogue,
    speaker_positions,
)
from .imagery import build_ambient_prompt, build_image_prompt
from .intent import parse_edit_request, wants_continue, wants_end, wants_new_story
from .narrator import Narrator
from .prompts import PromptAssets
from .states import (
    Chime,
    CoachPrompt,
    EndSession,
    GenerateScene,
    NewStory,
    ObjectEditRequest,
    PlayMusic,
    Speak,
    State,
    WelcomeVisual,
)
from .storyteller import build_storyteller_prompt, generate_scene_text, validate_scene

__all__ = [
    "ACT_NAMES",
    "Chime",
    "CoachOptions",
    "CoachPrompt",
    "EndSession",
    "GenerateScene",
    "NARRATOR",
    "NARRATOR_VOICE",
    "Narrator",
    "NarratorDecides",
    "NEED_MORE",
    "NewStory",
    "ObjectEditRequest",
    "OwnIdea",
    "PlayMusic",
    "PromptAssets",
    "READY",
    "SceneLine",
    "SceneScript",
    "Selected",
    "Speak",
    "State",
    "StoryContext",
    "VoiceSpec",
    "WelcomeVisual",
    "assign_voices",
    "build_ambient_prompt",
    "build_image_prompt",
    "build_storyteller_prompt",
    "coach",
    "converse_step",
    "generate_scene_text",
    "parse_coach_reply",
    "parse_confirmation",
    "parse_edit_request",
    "parse_scene_dialogue",
    "speaker_positions",
    "validate_scene",
    "wants_continue",
    "wants_end",
    "wants_new_story",
]
