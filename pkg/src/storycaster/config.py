"""Runtime configuration.

A config is a JSON file; every path value may use the ``pkg:`` prefix to
reference bundled assets (for example ``pkg:rigs/demo_room.rig``), otherwise
paths resolve relative to the config file's directory.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field, fields
from importlib import resources
from pathlib import Path


def assets_root() -> Path:
    """Directory holding the bundled assets (prompts, rigs, masks, ...)."""
    return Path(resources.files("storycaster") / "assets")


def resolve_path(value: str, base: Path | None = None) -> Path:
    if value.startswith("pkg:"):
        return assets_root() / value[4:]
    p = Path(value)
    if not p.is_absolute() and base is not None:
        p = base / p
    return p


@dataclass
class Config:
    rig_path: str = "pkg:rigs/demo_room.rig"
    mask_dir: str = "pkg:masks"
    descriptor_path: str = "pkg:descriptors/shapes.txt"
    prompt_dir: str = "pkg:prompts"
    script_dir: str = "pkg:scripts"
    music_dir: str = "pkg:music"
    artifacts_dir: str = "artifacts"

    panorama_size: tuple[int, int] = (1024, 512)  # generation size (w, h)
    cube_face_res: int = 256
    upscale_factor: int = 4
    scene_control_strength: float = 0.76
    inpaint_control_strength: float = 0.54
    occlusion_epsilon: float = 0.03
    silence_timeout_s: float = 3.0
    seed: int = 7
    backend: str = "mock"  # mock | remote
    render_projectors: bool = True
    write_audio: bool = True

    room_half_x: float = 2.0
    room_half_y: float = 2.0
    room_height: float = 3.0
    wall_tolerance: float = 0.05
    view_center: tuple[float, float, float] = (0.0, 0.0, 1.5)
    listener: tuple[float, float, float] = (0.0, 0.0, 1.2)

    remote_endpoints: dict = field(default_factory=dict)

    #: directory the config file was loaded from; used to resolve relative paths
    base_dir: Path | None = None

    @classmethod
    def load(cls, path: str | Path) -> "Config":
        path = Path(path)
        data = json.loads(path.read_text())
        known = {f.name for f in fields(cls)}
        unknown = set(data) - known
        if unknown:
            raise ValueError(f"unknown config keys: {sorted(unknown)}")
        cfg = cls(**data)
        cfg.base_dir = path.parent
        cfg.panorama_size = tuple(cfg.panorama_size)
        cfg.view_center = tuple(cfg.view_center)
        cfg.listener = tuple(cfg.listener)
        return cfg

    def path(self, value: str) -> Path:
        return resolve_path(value, self.base_dir)

    @property
    def pano_width(self) -> int:
        return int(self.panorama_size[0])

    @property
    def pano_height(self) -> int:
        return int(self.panorama_size[1])


def default_config() -> Config:
    return Config()
