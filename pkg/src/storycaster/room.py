"""The live room model: calibrated rig plus derived geometry.

Hardware capture is out of scope, so depth frames come from the analytic
scanner over the configured room box.  Everything derived (mesh, cube map,
panoramic depth, projector ray hits) is computed once and cached; scenes
only swap panoramas and wall-removal state on top.
"""

from __future__ import annotations

import logging

import numpy as np

from .calibration import load_rig
from .config import Config
from .geometry import (
    CylindricalDepthImage,
    PanoramaImage,
    ProjectorFrame,
    RoomBox,
    control_mask,
    cube_to_cylindrical,
    fuse_depth_frames,
    projector_hits,
    remove_walls,
    render_cube_depth,
    scan_box_room,
    shade_projector_view,
    vec3,
)

log = logging.getLogger(__name__)


class RoomModel:
    def __init__(self, config: Config):
        self.config = config
        self.rig = load_rig(config.path(config.rig_path))
        self.box = RoomBox(
            config.room_half_x, config.room_half_y, config.room_height, config.wall_tolerance
        )
        self.center = vec3(*config.view_center)
        frames = scan_box_room(self.rig, self.box)
        self.mesh = fuse_depth_frames(self.rig, frames)
        self.cube = render_cube_depth(self.mesh, self.center, config.cube_face_res)
        self.depth_full = cube_to_cylindrical(self.cube, config.pano_width)
        self._depth_open: CylindricalDepthImage | None = None
        self._hits: dict[str, tuple[np.ndarray, np.ndarray]] = {}
        log.info(
            "room ready: %d triangles, %dx%d depth panorama",
            self.mesh.n_triangles,
            self.depth_full.width,
            self.depth_full.height,
        )

    def depth_for(self, outdoor: bool) -> CylindricalDepthImage:
        """Scene depth guidance: walls removed for outdoor scenes."""
        if not outdoor:
            return self.depth_full
        if self._depth_open is None:
            self._depth_open = remove_walls(self.depth_full, self.box)
        return self._depth_open

    def depth_at_width(self, width: int, outdoor: bool) -> CylindricalDepthImage:
        """Depth panorama resampled from the cube map at another width."""
        cyl = cube_to_cylindrical(self.cube, width)
        return remove_walls(cyl, self.box) if outdoor else cyl

    def guidance_mask(self, outdoor: bool) -> np.ndarray:
        return control_mask(self.depth_for(outdoor))

    def projector_frames(
        self, pano: PanoramaImage, cyl: CylindricalDepthImage
    ) -> list[ProjectorFrame]:
        frames = []
        for proj in self.rig.projectors:
            if proj.name not in self._hits:
                self._hits[proj.name] = projector_hits(self.mesh, proj)
            hit, points = self._hits[proj.name]
            pixels = shade_projector_view(
                hit, points, pano, cyl, self.config.occlusion_epsilon
            )
            frames.append(ProjectorFrame(proj.name, pixels))
        return frames
