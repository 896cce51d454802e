"""Image serialization conventions.

Depth images: 16-bit grayscale PNG in millimeters (0 = invalid/removed).
Color images and panoramas: 8-bit RGB PNG.  Masks: 8-bit grayscale PNG where
values >= 128 mean inside.

Panorama-layout arrays store row 0 at elevation -pi/2 (looking down); PNGs
are written top-of-scene-up, so save/load flips rows.
"""

from __future__ import annotations

import io
from pathlib import Path

import numpy as np
from PIL import Image

from .geometry.types import CylindricalDepthImage, PanoramaImage

MM_PER_M = 1000.0


def save_depth_png(cyl: CylindricalDepthImage, path: str | Path) -> None:
    mm = np.clip(np.rint(cyl.depth * MM_PER_M), 0, 65535).astype(np.uint16)
    Image.fromarray(mm[::-1]).save(path)


def load_depth_png(path: str | Path, center) -> CylindricalDepthImage:
    arr = np.asarray(Image.open(path), dtype=np.uint16)
    return CylindricalDepthImage(arr[::-1].astype(np.float64) / MM_PER_M, center)


def depth_grid_to_png_bytes(depth_m: np.ndarray, flip: bool = True) -> bytes:
    """Encode any depth grid (meters) as 16-bit millimeter PNG bytes."""
    mm = np.clip(np.rint(depth_m * MM_PER_M), 0, 65535).astype(np.uint16)
    if flip:
        mm = mm[::-1]
    buf = io.BytesIO()
    Image.fromarray(mm).save(buf, format="PNG")
    return buf.getvalue()


# fast, deterministic compression: generated imagery is throwaway dithered
# content where zlib ratio matters less than encode time
_PNG_COMPRESS_LEVEL = 1


def save_rgb_png(pixels: np.ndarray, path: str | Path, flip: bool = True) -> None:
    arr = pixels[::-1] if flip else pixels
    Image.fromarray(np.ascontiguousarray(arr), mode="RGB").save(
        path, compress_level=_PNG_COMPRESS_LEVEL
    )


def load_rgb_png(path: str | Path, flip: bool = True) -> np.ndarray:
    arr = np.asarray(Image.open(path).convert("RGB"), dtype=np.uint8)
    return arr[::-1] if flip else arr


def rgb_png_bytes(pixels: np.ndarray, flip: bool = True) -> bytes:
    arr = pixels[::-1] if flip else pixels
    buf = io.BytesIO()
    Image.fromarray(np.ascontiguousarray(arr), mode="RGB").save(
        buf, format="PNG", compress_level=_PNG_COMPRESS_LEVEL
    )
    return buf.getvalue()


def rgb_from_png_bytes(data: bytes, flip: bool = True) -> np.ndarray:
    arr = np.asarray(Image.open(io.BytesIO(data)).convert("RGB"), dtype=np.uint8)
    return arr[::-1] if flip else arr


def save_pano_png(pano: PanoramaImage, path: str | Path) -> None:
    save_rgb_png(pano.pixels, path)


def load_pano_png(path: str | Path) -> PanoramaImage:
    return PanoramaImage(load_rgb_png(path))


def save_mask_png(mask: np.ndarray, path: str | Path, flip: bool = True) -> None:
    """Binary/boolean or 0..255 mask to 8-bit grayscale; inside -> 255."""
    m = np.asarray(mask)
    if m.dtype == bool or m.max(initial=0) <= 1:
        m = (m > 0).astype(np.uint8) * 255
    arr = m[::-1] if flip else m
    Image.fromarray(arr.astype(np.uint8), mode="L").save(path)


def load_mask_png(path: str | Path, flip: bool = True) -> np.ndarray:
    """Boolean mask from 8-bit grayscale PNG (>= 128 = inside)."""
    arr = np.asarray(Image.open(path).convert("L"), dtype=np.uint8)
    if flip:
        arr = arr[::-1]
    return arr >= 128


def mask_png_bytes(mask: np.ndarray, flip: bool = True) -> bytes:
    m = (np.asarray(mask) > 0).astype(np.uint8) * 255
    if flip:
        m = m[::-1]
    buf = io.BytesIO()
    Image.fromarray(m, mode="L").save(buf, format="PNG")
    return buf.getvalue()


def mask_from_png_bytes(data: bytes, flip: bool = True) -> np.ndarray:
    arr = np.asarray(Image.open(io.BytesIO(data)).convert("L"), dtype=np.uint8)
    if flip:
        arr = arr[::-1]
    return arr >= 128
