import json
import subprocess
import sys
from pathlib import Path

import pytest

from storycaster.cli import main
from storycaster.config import assets_root

SMALL = str(assets_root() / "configs" / "small.json")


def test_help_text_lists_subcommands():
    proc = subprocess.run(
        [sys.executable, "-m", "storycaster.cli", "--help"],
        capture_output=True, text=True,
    )
    assert proc.returncode == 0
    for sub in ("serve", "run-session", "render-pipeline", "rig-check", "bless-goldens"):
        assert sub in proc.stdout


def test_run_session_demo_script(tmp_path, capsys):
    script = assets_root() / "sessions" / "story_02.txt"
    code = main(["run-session", str(script), "--config", SMALL, "--outdir", str(tmp_path)])
    assert code == 0
    out = capsys.readouterr().out
    assert "acts=3" in out
    assert (tmp_path / "transcript.txt").exists()
    assert (tmp_path / "events.jsonl").exists()
    assert (tmp_path / "effects.log").exists()


def test_run_session_determinism(tmp_path):
    script = assets_root() / "sessions" / "story_02.txt"
    assert main(["run-session", str(script), "--config", SMALL, "--outdir", str(tmp_path / "a")]) == 0
    assert main(["run-session", str(script), "--config", SMALL, "--outdir", str(tmp_path / "b")]) == 0
    ta = (tmp_path / "a" / "transcript.txt").read_bytes()
    tb = (tmp_path / "b" / "transcript.txt").read_bytes()
    assert ta == tb


def test_run_session_exhausted_script_fails_naming_state(tmp_path, capsys):
    script = tmp_path / "short.txt"
    script.write_text(
        "hello\nokay\nno\n"
        "a story about a dragon guarding a cave, scary mood, hero exploring\n"
    )
    code = main(["run-session", str(script), "--config", SMALL, "--outdir", str(tmp_path / "out")])
    assert code != 0
    assert "ConfirmScene" in capsys.readouterr().err


def test_render_pipeline_outdoor_prompt(tmp_path, capsys):
    code = main([
        "render-pipeline", "--prompt", "sunlit forest", "--seed", "7",
        "--outdir", str(tmp_path), "--config", SMALL,
    ])
    assert code == 0
    manifest = json.loads((tmp_path / "manifest.json").read_text())
    assert manifest["outdoor"] is True
    assert len(manifest["frames"]) == 6
    for name in ("depth.png", "depth_guidance.png", "control_mask.png", "panorama.png"):
        assert (tmp_path / name).exists()
    stats = json.loads((tmp_path / "mesh_stats.json").read_text())
    assert stats["triangles"] > 0


def test_render_pipeline_indoor_keeps_walls(tmp_path):
    code = main([
        "render-pipeline", "--prompt", "cozy tavern fireplace", "--seed", "7",
        "--outdir", str(tmp_path), "--config", SMALL,
    ])
    assert code == 0
    manifest = json.loads((tmp_path / "manifest.json").read_text())
    assert manifest["outdoor"] is False
    # indoor guidance keeps the full depth: the two files match
    assert (tmp_path / "depth.png").read_bytes() == (tmp_path / "depth_guidance.png").read_bytes()


def test_rig_check_ok(capsys):
    code = main(["rig-check", str(assets_root() / "rigs" / "demo_room.rig")])
    assert code == 0
    out = capsys.readouterr().out
    assert "4 cameras" in out and "6 projectors" in out


def test_rig_check_bad_file(tmp_path, capsys):
    bad = tmp_path / "bad.rig"
    bad.write_text("[camera c0]\nfx = 1\n")
    assert main(["rig-check", str(bad)]) == 1
    assert "error" in capsys.readouterr().err


def test_bless_goldens_requires_flag(tmp_path, capsys):
    code = main(["bless-goldens", "--outdir", str(tmp_path)])
    assert code == 2
    assert "--bless" in capsys.readouterr().err
    assert not (tmp_path / "transcript.txt").exists()
