"""The hand-crafted object mask registry.

Masks live on disk as ``mask<name>white.png`` (8-bit grayscale at panorama
dimensions, >= 128 = inside); anything else in the directory is ignored.
Names are lowercase alphanumeric.  Overlapping masks are legal but logged,
since an edit to one object would bleed into the other.
"""

from __future__ import annotations

import logging
import re
from dataclasses import dataclass, field
from pathlib import Path

import numpy as np

from ..errors import MaskError, UnknownObjectError
from ..imageio import load_mask_png

log = logging.getLogger(__name__)

MASK_FILE_RE = re.compile(r"^mask([a-z0-9]+)white\.png$")


def mask_filename(name: str) -> str:
    return f"mask{name}white.png"


@dataclass
class MaskRegistry:
    masks: dict[str, np.ndarray]  # name -> (H, W) bool
    source_dir: Path
    pano_size: tuple[int, int]  # (width, height)

    def names(self) -> list[str]:
        return sorted(self.masks)

    def get(self, name: str) -> np.ndarray:
        if name not in self.masks:
            raise UnknownObjectError(name, list(self.masks))
        return self.masks[name]

    def __contains__(self, name: str) -> bool:
        return name in self.masks


def load_masks(directory: str | Path, pano_size: tuple[int, int]) -> MaskRegistry:
    """Load every conforming mask file; validate dimensions against the panorama."""
    directory = Path(directory)
    if not directory.is_dir():
        raise MaskError(f"mask directory not found: {directory}")
    width, height = pano_size
    masks: dict[str, np.ndarray] = {}
    for path in sorted(directory.iterdir()):
        m = MASK_FILE_RE.match(path.name)
        if not m:
            continue
        name = m.group(1)
        try:
            mask = load_mask_png(path)
        except Exception as exc:
            raise MaskError(f"unreadable mask file {path.name}: {exc}") from exc
        if mask.shape != (height, width):
            raise MaskError(
                f"mask {path.name} is {mask.shape[1]}x{mask.shape[0]}, "
                f"panorama needs {width}x{height}"
            )
        masks[name] = mask

    names = sorted(masks)
    for i, a in enumerate(names):
        for b in names[i + 1 :]:
            if np.any(masks[a] & masks[b]):
                log.warning("masks %r and %r overlap; edits will interact", a, b)
    return MaskRegistry(masks=masks, source_dir=directory, pano_size=(width, height))
