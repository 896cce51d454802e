"""One-shot render pipeline: prompt in, panorama and projector frames out.

Runs the full visual path against a rig file: fuse, panoramic depth,
indoor/outdoor classification, optional wall removal, depth-conditioned
generation, 4x upscale, and per-projector reprojection with occlusion
blackout.  Used by the ``render-pipeline`` CLI subcommand and by tests that
sweep generation parameters.
"""

from __future__ import annotations

import dataclasses
import json
import logging
from pathlib import Path

import numpy as np

from .backends import BackendHub, ChatRequest, ImageGenRequest
from .config import Config
from .imageio import save_depth_png, save_mask_png, save_pano_png, save_rgb_png
from .room import RoomModel
from .story.prompts import PromptAssets

log = logging.getLogger(__name__)


def classify_outdoor(hub: BackendHub, prompts: PromptAssets, prompt: str) -> bool:
    verdict = hub.chat(
        ChatRequest(
            system_prompt=prompts.render("scene_classifier", prompt_text=prompt),
            messages=[],
        )
    )
    return verdict.strip().upper().startswith("OUTDOOR")


def render_pipeline(
    config: Config,
    prompt: str,
    seed: int,
    outdir: str | Path,
    rig_path: str | None = None,
    control_strength: float | None = None,
    hub: BackendHub | None = None,
    room: RoomModel | None = None,
) -> dict:
    """Returns a manifest of written files and computed stats."""
    outdir = Path(outdir)
    outdir.mkdir(parents=True, exist_ok=True)
    if rig_path is not None:
        config = dataclasses.replace(config, rig_path=rig_path)
    if room is None:
        room = RoomModel(config)
    hub = hub or BackendHub()
    prompts = PromptAssets.load(config.path(config.prompt_dir), config.path(config.script_dir))
    strength = config.scene_control_strength if control_strength is None else control_strength

    mesh_stats = {
        "vertices": int(len(room.mesh.vertices)),
        "triangles": int(room.mesh.n_triangles),
        "bounds_min": [float(v) for v in room.mesh.bounds()[0]],
        "bounds_max": [float(v) for v in room.mesh.bounds()[1]],
    }
    (outdir / "mesh_stats.json").write_text(json.dumps(mesh_stats, indent=2) + "\n")

    save_depth_png(room.depth_full, outdir / "depth.png")
    outdoor = classify_outdoor(hub, prompts, prompt)
    depth = room.depth_for(outdoor)
    save_depth_png(depth, outdir / "depth_guidance.png")
    mask = room.guidance_mask(outdoor)
    save_mask_png(mask, outdir / "control_mask.png")

    req = ImageGenRequest(
        prompt=prompt,
        depth=depth,
        control_strength=strength,
        control_mask=mask,
        seed=seed,
        output_size=config.panorama_size,
        inpaint_mask=np.ones_like(depth.depth, dtype=bool),
    )
    pano = hub.generate_image(req)
    upscaled = hub.upscale(pano, config.upscale_factor)
    save_pano_png(upscaled, outdir / "panorama.png")

    frames_dir = outdir / "frames"
    frames_dir.mkdir(exist_ok=True)
    depth_hi = room.depth_at_width(upscaled.width, outdoor)
    frame_files = []
    for frame in room.projector_frames(upscaled, depth_hi):
        path = frames_dir / f"{frame.projector_name}.png"
        save_rgb_png(frame.pixels, path)
        frame_files.append(str(path))

    manifest = {
        "prompt": prompt,
        "outdoor": outdoor,
        "seed": seed,
        "control_strength": strength,
        "panorama": str(outdir / "panorama.png"),
        "panorama_size": [upscaled.width, upscaled.height],
        "frames": frame_files,
        "mesh": mesh_stats,
    }
    (outdir / "manifest.json").write_text(json.dumps(manifest, indent=2) + "\n")
    return manifest
