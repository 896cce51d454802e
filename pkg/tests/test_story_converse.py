from storycaster.backends import BackendHub
from storycaster.backends.mock import ScriptedChatProvider
from storycaster.story import NEED_MORE, READY, converse_step, parse_confirmation


def test_rich_single_turn_is_ready(hub, prompts):
    reply, verdict = converse_step(
        hub, prompts, [],
        "A story about a dragon guarding a cave, scary mood, me as the hero exploring",
    )
    assert verdict == READY
    assert reply  # a personalized confirmation question comes back


def test_bare_story_request_needs_more(hub, prompts):
    reply, verdict = converse_step(hub, prompts, [], "a story")
    assert verdict == NEED_MORE
    assert "?" in reply


def test_slots_accumulate_across_turns(hub, prompts):
    history = []
    turns = [
        "a story",
        "set in a lighthouse by the sea",
        "me and my sister are the heroes",
        "we are searching for a lost ship, spooky mood",
    ]
    verdicts = []
    for text in turns:
        reply, verdict = converse_step(hub, prompts, history, text)
        history += [("user", text), ("assistant", reply)]
        verdicts.append(verdict)
    assert verdicts[0] == NEED_MORE
    assert verdicts[-1] == READY


def test_six_vague_turns_force_ready(prompts):
    # a chat backend that never says READY
    hub = BackendHub(overrides={"chat": ScriptedChatProvider(["NEED MORE\nTell me more?"] * 10, then_mock=False)})
    history = []
    verdicts = []
    for k in range(6):
        reply, verdict = converse_step(hub, prompts, history, f"hmm {k}")
        history += [("user", f"hmm {k}"), ("assistant", reply)]
        verdicts.append(verdict)
    assert verdicts[:5] == [NEED_MORE] * 5
    assert verdicts[5] == READY


def test_backend_failure_degrades_to_need_more(prompts):
    hub = BackendHub(overrides={"chat": ScriptedChatProvider([], then_mock=False)})
    reply, verdict = converse_step(hub, prompts, [], "something short")
    assert verdict == NEED_MORE
    assert "sorry" in reply.lower()


class TestParseConfirmation:
    def test_yes(self, hub, prompts):
        assert parse_confirmation(hub, prompts, "yes") == "positive"

    def test_lets_go(self, hub, prompts):
        assert parse_confirmation(hub, prompts, "let's go!!") == "positive"

    def test_refusal_with_addition(self, hub, prompts):
        assert parse_confirmation(hub, prompts, "not yet, add a sidekick") == "negative"

    def test_noise_is_unclear(self, hub, prompts):
        assert parse_confirmation(hub, prompts, "the weather is nice") == "unclear"
