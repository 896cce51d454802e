"""Wall removal and the depth-guidance mask.

Wall identification is purely geometric against a configured room box: a
panorama pixel is cleared when its reconstructed 3-D point lies within the
box's wall tolerance of one of the four vertical wall planes.  Floor and
ceiling always survive.  Cleared pixels (depth 0) are exactly the pixels the
generation mask later tells the image backend to ignore.
"""

from __future__ import annotations

import numpy as np

from ..errors import GeometryError
from .equirect import pixel_dirs
from .types import CylindricalDepthImage, RoomBox


def remove_walls(cyl: CylindricalDepthImage, room: RoomBox) -> CylindricalDepthImage:
    """Zero out wall pixels; everything else is passed through untouched.

    Idempotent: cleared pixels reconstruct to the center point, which is
    never near a wall plane for a center inside the room.
    """
    if not room.contains(cyl.center):
        raise GeometryError("panorama center must lie inside the room box")
    dirs = pixel_dirs(cyl.width, cyl.height)
    pts = cyl.center + dirs * cyl.depth[..., None]
    tol = room.wall_tolerance
    near_wall = (
        (np.abs(pts[..., 0] - room.half_x) <= tol)
        | (np.abs(pts[..., 0] + room.half_x) <= tol)
        | (np.abs(pts[..., 1] - room.half_y) <= tol)
        | (np.abs(pts[..., 1] + room.half_y) <= tol)
    )
    depth = np.where(near_wall & (cyl.depth > 0), 0.0, cyl.depth)
    return CylindricalDepthImage(depth, cyl.center.copy())


def control_mask(cyl: CylindricalDepthImage) -> np.ndarray:
    """Binary (H, W) uint8 mask: 1 where depth guidance applies, 0 where removed."""
    return (cyl.depth > 0).astype(np.uint8)
