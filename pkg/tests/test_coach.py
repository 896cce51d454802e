import pytest

from storycaster.backends import BackendHub
from storycaster.backends.mock import ScriptedChatProvider
from storycaster.errors import StorycasterError
from storycaster.story import (
    CoachOptions,
    NarratorDecides,
    OwnIdea,
    Selected,
    StoryContext,
    coach,
    parse_coach_reply,
)
from storycaster.story.context import SceneScript
from storycaster.textutil import word_count


def ctx_after_act(n, seed=7):
    c = StoryContext(seed=seed)
    c.original_storyline = "an explorer on mars searching for a lost signal"
    for act in range(1, n + 1):
        c.scenes.append(
            SceneScript(act, "The dunes shimmer. MIRA: We move at dusk.", [], 9)
        )
    return c


class TestCoach:
    def test_exactly_three_options_within_word_limit(self, hub, prompts):
        options = coach(hub, prompts, ctx_after_act(1))
        assert len(options.options) == 3
        assert all(word_count(o) <= 10 for o in options.options)
        assert options.act == 2

    def test_act_mapping_after_act_one_names_confrontation(self, hub, prompts):
        coach(hub, prompts, ctx_after_act(1))
        sent = hub.logged("chat")[-1].system_prompt
        assert "The Confrontation" in sent

    def test_act_mapping_after_act_two_names_resolution(self, hub, prompts):
        coach(hub, prompts, ctx_after_act(2))
        sent = hub.logged("chat")[-1].system_prompt
        assert "The Resolution" in sent

    def test_missing_option_triggers_one_retry(self, prompts):
        bad = "So far so good.\n1. A rival arrives\n2. A storm hits"
        good = "So far so good.\n1. A rival arrives\n2. A storm hits\n3. The key is lost"
        scripted = ScriptedChatProvider([bad, good], then_mock=False)
        hub = BackendHub(overrides={"chat": scripted})
        options = coach(hub, prompts, ctx_after_act(1))
        assert scripted.calls == 2
        assert len(options.options) == 3

    def test_unparseable_after_retry_raises(self, prompts):
        scripted = ScriptedChatProvider(["nope", "still nope"], then_mock=False)
        hub = BackendHub(overrides={"chat": scripted})
        with pytest.raises(StorycasterError, match="unparseable"):
            coach(hub, prompts, ctx_after_act(1))

    def test_overlong_options_rerequested_then_truncated(self, prompts):
        long_opt = "option with far far far too many words to ever fit the limit"
        reply = f"Summary.\n1. {long_opt}\n2. {long_opt}\n3. {long_opt}"
        scripted = ScriptedChatProvider([reply, reply], then_mock=False)
        hub = BackendHub(overrides={"chat": scripted})
        options = coach(hub, prompts, ctx_after_act(1))
        assert scripted.calls == 2
        assert all(word_count(o) <= 10 for o in options.options)

    def test_wrong_act_count_rejected(self, hub, prompts):
        with pytest.raises(StorycasterError):
            coach(hub, prompts, ctx_after_act(0))
        with pytest.raises(StorycasterError):
            coach(hub, prompts, ctx_after_act(3))


OPTIONS = CoachOptions(
    summary="So far",
    options=["A rival arrives", "A storm hits", "The key is lost"],
    act=2,
)


class TestParseCoachReply:
    @pytest.mark.parametrize(
        "text,expected_index",
        [
            ("option 2", 2),
            ("I'll take option two", 2),
            ("the second one", 2),
            ("number 3", 3),
            ("pick one", 1),
            ("2", 2),
        ],
    )
    def test_selection_phrases(self, text, expected_index):
        result = parse_coach_reply(text, OPTIONS)
        assert isinstance(result, Selected)
        assert result.index == expected_index
        assert result.text == OPTIONS.options[expected_index - 1]

    @pytest.mark.parametrize("text", ["you decide", "surprise me!", "totally up to you"])
    def test_delegation_phrases(self, text):
        assert isinstance(parse_coach_reply(text, OPTIONS), NarratorDecides)

    def test_own_idea_passes_verbatim(self):
        text = "I want the hero to discover a secret cave"
        result = parse_coach_reply(text, OPTIONS)
        assert isinstance(result, OwnIdea)
        assert result.text == text

    def test_number_words_inside_long_ideas_do_not_select(self):
        text = "no one believes the rumors about the lighthouse keeper"
        assert isinstance(parse_coach_reply(text, OPTIONS), OwnIdea)
