#!/usr/bin/env python3
"""Regenerate the bundled binary assets (masks, music, rig, configs).

Deterministic: running it twice produces identical files.  Text assets
(prompts, scripts, sessions, descriptors) are authored by hand and not
touched here.
"""

import json
import sys
from pathlib import Path

import numpy as np

ROOT = Path(__file__).resolve().parents[1]
sys.path.insert(0, str(ROOT / "src"))

from storycaster.audio import SAMPLE_RATE, write_wav  # noqa: E402
from storycaster.calibration import save_rig  # noqa: E402
from storycaster.geometry import RoomBox, default_box_rig  # noqa: E402
from storycaster.imageio import save_mask_png  # noqa: E402

ASSETS = ROOT / "src" / "storycaster" / "assets"

PANO_W, PANO_H = 1024, 512


def make_masks():
    """Hand-crafted object regions in panorama space (row 0 = looking down)."""
    out = ASSETS / "masks"
    out.mkdir(parents=True, exist_ok=True)

    def ellipse(cx, cy, rx, ry):
        u = np.arange(PANO_W)
        v = np.arange(PANO_H)
        return ((u[None, :] - cx) / rx) ** 2 + ((v[:, None] - cy) / ry) ** 2 <= 1.0

    def rect(cx, cy, hw, hh):
        u = np.arange(PANO_W)
        v = np.arange(PANO_H)
        return (np.abs(u[None, :] - cx) <= hw) & (np.abs(v[:, None] - cy) <= hh)

    masks = {
        "ottoman": ellipse(256, 156, 42, 26),
        "table": rect(569, 170, 46, 20),
        "sofa": ellipse(853, 184, 72, 24) | rect(853, 170, 70, 12),
        "lamp": rect(398, 250, 13, 32) | ellipse(398, 286, 20, 10),
    }
    for name, mask in masks.items():
        save_mask_png(mask, out / f"mask{name}white.png")
        print(f"mask{name}white.png: {int(mask.sum())} px")


def make_music():
    """Three short instrumental loops (arpeggiated triads, integer cycles)."""
    out = ASSETS / "music"
    out.mkdir(parents=True, exist_ok=True)
    progressions = {
        "loop_amber": [220.0, 277.18, 329.63, 277.18],
        "loop_tide": [196.0, 246.94, 293.66, 369.99],
        "loop_ember": [174.61, 220.0, 261.63, 220.0],
    }
    dur = 4.0
    frames = int(dur * SAMPLE_RATE)
    for name, notes in progressions.items():
        t = np.arange(frames) / SAMPLE_RATE
        buf = np.zeros(frames)
        step = frames // len(notes)
        for i, f in enumerate(notes):
            seg = slice(i * step, (i + 1) * step if i + 1 < len(notes) else frames)
            ts = t[seg]
            cycles = round(f * dur / len(notes)) * len(notes) / dur  # integer-ish cycles
            note = 0.22 * np.sin(2 * np.pi * cycles * ts) + 0.08 * np.sin(2 * np.pi * cycles * 2 * ts)
            env = np.ones(len(note))
            fade = max(1, len(note) // 10)
            env[:fade] = np.linspace(0.2, 1, fade)
            env[-fade:] = np.linspace(1, 0.2, fade)
            buf[seg] = note * env
        write_wav(out / f"{name}.wav", buf.astype(np.float32))
        print(f"{name}.wav: {frames} frames")


def make_rig():
    out = ASSETS / "rigs"
    out.mkdir(parents=True, exist_ok=True)
    room = RoomBox(2.0, 2.0, 3.0)
    save_rig(default_box_rig(room), out / "demo_room.rig")
    save_rig(
        default_box_rig(room, cam_width=64, cam_height=48, proj_width=200, proj_height=125),
        out / "demo_room_small.rig",
    )
    print("rigs written")


def make_configs():
    out = ASSETS / "configs"
    out.mkdir(parents=True, exist_ok=True)
    default = {
        "rig_path": "pkg:rigs/demo_room.rig",
        "mask_dir": "pkg:masks",
        "panorama_size": [1024, 512],
        "cube_face_res": 256,
        "upscale_factor": 4,
        "scene_control_strength": 0.76,
        "inpaint_control_strength": 0.54,
        "silence_timeout_s": 3.0,
        "seed": 7,
        "backend": "mock",
    }
    (out / "default.json").write_text(json.dumps(default, indent=2) + "\n")
    small = dict(default)
    small.update(
        {
            "rig_path": "pkg:rigs/demo_room_small.rig",
            "cube_face_res": 64,
            "write_audio": False,
        }
    )
    (out / "small.json").write_text(json.dumps(small, indent=2) + "\n")
    print("configs written")


if __name__ == "__main__":
    make_masks()
    make_music()
    make_rig()
    make_configs()
