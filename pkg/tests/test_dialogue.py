import numpy as np

from storycaster.story import NARRATOR, assign_voices, parse_scene_dialogue, speaker_positions
from storycaster.story.context import SceneLine


class TestParse:
    def test_consecutive_same_speaker_lines_merge(self):
        lines = parse_scene_dialogue("SARAH: Hello.\nSARAH: Anyone here?")
        assert len(lines) == 1
        assert lines[0].speaker == "Sarah"
        assert lines[0].text == "Hello. Anyone here?"

    def test_pure_prose_is_single_narration(self):
        lines = parse_scene_dialogue(
            "The room grew quiet. Dust drifted in the light.\nNothing moved."
        )
        assert len(lines) == 1
        assert lines[0].speaker == NARRATOR
        assert lines[0].kind == "narration"

    def test_alternating_exchange_preserved_in_order(self):
        raw = "\n".join(
            [
                "AVA: One.",
                "BEN: Two.",
                "AVA: Three.",
                "BEN: Four.",
                "AVA: Five.",
                "BEN: Six.",
            ]
        )
        lines = parse_scene_dialogue(raw)
        assert [l.speaker for l in lines] == ["Ava", "Ben"] * 3
        assert all(l.kind == "dialogue" for l in lines)

    def test_screenplay_cue_lines(self):
        raw = "MAREN\nThat key opens one door.\nHand it over.\n\nThe boy hesitates."
        lines = parse_scene_dialogue(raw)
        assert lines[0].speaker == "Maren"
        assert lines[0].text == "That key opens one door. Hand it over."
        assert lines[1].speaker == NARRATOR

    def test_mixed_narration_and_dialogue(self):
        raw = "Wind howls outside.\nKATO: Close the shutters.\nThe shutters bang once."
        lines = parse_scene_dialogue(raw)
        assert [l.speaker for l in lines] == [NARRATOR, "Kato", NARRATOR]


def lines_for(speakers):
    return [SceneLine(s, "dialogue" if s != NARRATOR else "narration", f"{s} speaks.") for s in speakers]


class TestVoices:
    def test_three_speakers_three_distinct_voices(self):
        assignment, warnings = assign_voices(lines_for([NARRATOR, "Ava", "Ben"]), seed=3)
        voices = [v.voice for v in assignment.values()]
        assert len(set(voices)) == 3
        assert assignment[NARRATOR].voice == "fable"
        assert warnings == []

    def test_narrator_always_assigned_even_if_absent(self):
        assignment, _ = assign_voices(lines_for(["Ava", "Ben"]), seed=3)
        assert NARRATOR in assignment

    def test_seven_speakers_reuse_exactly_one_voice(self):
        speakers = [NARRATOR, "Ava", "Ben", "Cy", "Dee", "Eli", "Fox"]
        assignment, warnings = assign_voices(lines_for(speakers), seed=1)
        non_narrator = [assignment[s].voice for s in speakers if s != NARRATOR]
        assert "fable" not in non_narrator
        assert len(non_narrator) - len(set(non_narrator)) == 1  # exactly one reuse
        assert any("reusing voices" in w for w in warnings)

    def test_same_seed_same_assignment(self):
        a, _ = assign_voices(lines_for([NARRATOR, "Ava", "Ben", "Cy"]), seed=9)
        b, _ = assign_voices(lines_for([NARRATOR, "Ava", "Ben", "Cy"]), seed=9)
        assert {s: v.voice for s, v in a.items()} == {s: v.voice for s, v in b.items()}

    def test_positions_on_circle_narrator_centered(self):
        speakers = [NARRATOR, "Ava", "Ben", "Cy"]
        positions = speaker_positions(speakers)
        assert np.allclose(positions[NARRATOR], [0, 0, 1.6])
        for name in ("Ava", "Ben", "Cy"):
            p = positions[name]
            assert np.hypot(p[0], p[1]) == np.float64(1.5) or abs(np.hypot(p[0], p[1]) - 1.5) < 1e-9
            assert p[2] == 1.6
        # first character sits at azimuth zero
        assert np.allclose(positions["Ava"], [1.5, 0, 1.6])

    def test_styles_come_from_backend(self, hub, prompts):
        assignment, _ = assign_voices(
            lines_for([NARRATOR, "Ava"]), seed=2, hub=hub, prompts=prompts
        )
        assert assignment["Ava"].style_instructions
        assert len(hub.logged("chat")) >= 1
