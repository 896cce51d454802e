"""The Narrator: the session's orchestrating state machine.

``advance`` consumes one user utterance and returns the ordered effect list
for the runtime to execute; generation and playback completions come back in
through ``scene_ready`` / ``playback_complete`` / ``edit_complete``.  The
narrator itself only makes fast chat-backend calls (conversation, coaching,
classification); all heavy work lives behind effects.

Every user input is acknowledged with a chime effect before any speech, and
a finished session is absorbing: advancing an Ended session raises.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass, field

from ..backends.hub import BackendHub
from ..errors import SessionError
from ..textutil import stable_hash64, tokenize
from .coach import CoachOptions, NarratorDecides, OwnIdea, Selected, coach, parse_coach_reply
from .context import SceneScript, StoryContext
from .converse import NEED_MORE, READY, converse_step, parse_confirmation
from .intent import parse_edit_request, wants_continue, wants_end, wants_new_story
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

log = logging.getLogger(__name__)

FINAL_ACT = 3

WELCOME_TEXT = (
    "Welcome to the story room. Settle in; the shelves around you hold every "
    "tale ever told, and a few that haven't happened yet. Say anything when "
    "you are ready to begin."
)
TUTORIAL_TEXT = (
    "Here is how this works. We will build a story together in three acts. "
    "As we go, I will paint the walls with each scene, fill the air with its "
    "sounds, and give every character a voice somewhere in the room. You can "
    "also transform objects around you, for example, ask me to change the "
    "ottoman into a campfire. A soft chime means I heard you. Say anything "
    "to go on."
)
OBJECT_QUESTION = (
    "One more thing before we begin. Did you bring a personal object with "
    "you today? Describe it to me and I will weave it into the heart of your "
    "story. If not, just say no."
)
CONVERSE_OPENER = "Now, what kind of story shall we create together?"
NEW_STORY_OPENER = "A fresh page! What kind of story shall we create this time?"

_NO_OBJECT_WORDS = frozenset("no nothing none nope nah didn't didnt don't dont haven't".split())


def _postscene_prompt(act: int) -> str:
    if act < FINAL_ACT:
        return (
            "What a scene! Would you like to continue the story, or change an "
            "object in the room first?"
        )
    return (
        "And that completes your three-act story, wonderfully told. Would you "
        "like to create another story, or change an object in the room? Or are "
        "we done for today?"
    )


@dataclass
class Narrator:
    hub: BackendHub
    prompts: PromptAssets
    master_seed: int

    state: State = field(default_factory=lambda: State("Welcome"))
    ctx: StoryContext = None  # type: ignore[assignment]
    pending_coach: CoachOptions | None = None
    stories_started: int = 0
    _music_counter: int = 0

    def __post_init__(self):
        if self.ctx is None:
            self.ctx = self._fresh_context()

    def _fresh_context(self) -> StoryContext:
        seed = stable_hash64(str(self.master_seed), "story", str(self.stories_started)) % 2**31
        self.stories_started += 1
        return StoryContext(seed=seed)

    def _music(self) -> PlayMusic:
        effect = PlayMusic(self._music_counter)
        self._music_counter += 1
        return effect

    # -- session entry ---------------------------------------------------

    def start(self) -> list:
        """Effects that open the session (library visual, music, greeting)."""
        return [
            WelcomeVisual(),
            self._music(),
            Speak(WELCOME_TEXT, "tutorial"),
        ]

    # -- user input ---------------------------------------------------------

    def advance(self, user_input: str) -> list:
        """Process one utterance; returns the ordered effect list."""
        if self.state.name == "Ended":
            raise SessionError("session has ended")
        effects: list = [Chime()]
        handler = getattr(self, f"_on_{self.state.name.lower()}", None)
        if handler is None:  # states that do not accept input
            effects.append(
                Speak("One moment, the room is still working on the scene.", "storytelling")
            )
            return effects
        effects.extend(handler(user_input))
        return effects

    # -- per-state input handlers -----------------------------------------

    def _on_welcome(self, user_input: str) -> list:
        self.state = State("Tutorial")
        return [Speak(TUTORIAL_TEXT, "tutorial")]

    def _on_tutorial(self, user_input: str) -> list:
        self.state = State("AwaitPersonalObject")
        return [Speak(OBJECT_QUESTION, "tutorial")]

    def _on_awaitpersonalobject(self, user_input: str) -> list:
        toks = set(tokenize(user_input))
        if toks and not toks & _NO_OBJECT_WORDS:
            self.ctx.personal_object = user_input.strip()
            ack = "A perfect talisman. It will sit at the very center of your story."
        else:
            ack = "No matter, the room has treasures enough."
        self.state = State("Converse")
        return [Speak(ack + " " + CONVERSE_OPENER, "storytelling")]

    def _on_converse(self, user_input: str) -> list:
        reply, verdict = converse_step(
            self.hub, self.prompts, self.ctx.converse_history, user_input, self.ctx.seed
        )
        self.ctx.converse_history.append(("user", user_input))
        self.ctx.converse_history.append(("assistant", reply))
        if verdict == READY:
            self.ctx.original_storyline = " ".join(
                text for role, text in self.ctx.converse_history if role == "user"
            )
            self.state = State("ConfirmScene")
        return [Speak(reply, "storytelling")]

    def _on_confirmscene(self, user_input: str) -> list:
        verdict = parse_confirmation(self.hub, self.prompts, user_input)
        if verdict == "positive":
            self.state = State("GeneratingScene", act=1)
            return [
                Speak("Wonderful. Let me set the stage for your first act.", "storytelling"),
                GenerateScene(act=1, direction=self.ctx.original_storyline),
            ]
        if verdict == "negative":
            self.state = State("Converse")
            return [Speak("Of course, tell me what you'd like to add.", "storytelling")]
        return [
            Speak("Shall we begin? A simple yes will open the first act.", "storytelling")
        ]

    def _on_postscene(self, user_input: str) -> list:
        act = self.state.act
        edit = parse_edit_request(user_input)
        if edit:
            physical, virtual = edit
            self.state = State("ObjectEdit", act=act)
            return [ObjectEditRequest(physical, virtual)]
        if act >= FINAL_ACT:
            if wants_new_story(user_input):
                return self._begin_new_story()
            if wants_end(user_input):
                self.state = State("WrapUp")
                return [
                    Speak(
                        "Then our tale rests here. Thank you for dreaming aloud "
                        "with me today. Farewell.",
                        "storytelling",
                    ),
                    EndSession(),
                ]
            if wants_continue(user_input):
                return self._begin_new_story()
            return [
                Speak(
                    "We can start another story, transform an object, or end here. "
                    "Which would you like?",
                    "storytelling",
                )
            ]
        if wants_new_story(user_input):
            return [
                Speak(
                    "Let's finish this story first, there are acts yet to come! "
                    "Shall we continue?",
                    "storytelling",
                )
            ]
        if wants_continue(user_input):
            return self._begin_coaching(act)
        if wants_end(user_input):
            return [
                Speak(
                    "The story still has further to go. Say continue when you are "
                    "ready, or change an object in the room.",
                    "storytelling",
                )
            ]
        return [
            Speak(
                "You can continue the story, or ask me to change an object, for "
                "example, change the ottoman to a campfire.",
                "storytelling",
            )
        ]

    def _on_coachchoice(self, user_input: str) -> list:
        assert self.pending_coach is not None
        choice = parse_coach_reply(user_input, self.pending_coach)
        next_act = self.pending_coach.act
        if isinstance(choice, Selected):
            direction = choice.text
            ack = f"Option {choice.index} it is."
        elif isinstance(choice, OwnIdea):
            direction = choice.text
            ack = "I love it, we'll weave that in."
        else:
            assert isinstance(choice, NarratorDecides)
            direction = ""
            ack = "Leave it to me, I know just the thing."
        self.pending_coach = None
        self.state = State("GeneratingScene", act=next_act)
        return [
            Speak(ack, "storytelling"),
            GenerateScene(act=next_act, direction=direction),
        ]

    def _on_wrapup(self, user_input: str) -> list:
        self.state = State("Ended")
        return []

    # -- transitions shared by handlers -------------------------------------

    def _begin_new_story(self) -> list:
        self.ctx = self._fresh_context()
        self.state = State("Converse")
        return [NewStory(), Speak(NEW_STORY_OPENER, "storytelling")]

    def _begin_coaching(self, act: int) -> list:
        options = coach(self.hub, self.prompts, self.ctx)
        self.pending_coach = options
        self.state = State("CoachChoice", act=act)
        spoken = (
            f"{options.summary}. Here is where the story could go next. "
            f"Option one: {options.options[0]}. Option two: {options.options[1]}. "
            f"Option three: {options.options[2]}. You can pick an option, share "
            "your own idea, or say you decide and I'll surprise you."
        )
        return [
            CoachPrompt(options.act, options.summary, list(options.options)),
            Speak(spoken, "storytelling"),
        ]

    # -- runtime callbacks ---------------------------------------------------

    def scene_ready(self, scene: SceneScript) -> list:
        if self.state.name != "GeneratingScene" or self.state.act != scene.act:
            raise SessionError(f"unexpected scene completion in {self.state.label()}")
        self.ctx.scenes.append(scene)
        self.state = State("ScenePlayback", act=scene.act)
        return []

    def playback_complete(self) -> list:
        if self.state.name != "ScenePlayback":
            raise SessionError(f"unexpected playback completion in {self.state.label()}")
        act = self.state.act
        self.state = State("PostScene", act=act)
        return [self._music(), Speak(_postscene_prompt(act), "storytelling")]

    def edit_complete(self, error: str | None = None) -> list:
        if self.state.name != "ObjectEdit":
            raise SessionError(f"unexpected edit completion in {self.state.label()}")
        act = self.state.act
        self.state = State("PostScene", act=act)
        if error:
            return [Speak(error, "storytelling")]
        return [Speak("Done. Look around, the room has changed.", "storytelling")]

    def close(self) -> None:
        self.state = State("Ended")
