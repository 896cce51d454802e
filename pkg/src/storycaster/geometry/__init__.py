"""Room geometry: depth fusion, panoramic depth, projection mapping."""

from .cubemap import cube_to_cylindrical, render_cube_depth
from .equirect import (
    angles_to_dirs,
    angles_to_pixel,
    dirs_to_angles,
    nearest_pixel,
    pixel_angles,
    pixel_dirs,
)
from .fusion import fuse_depth_frames
from .projector import (
    OCCLUSION_EPSILON_M,
    bilinear_sample,
    projector_hits,
    render_projector_view,
    shade_projector_view,
)
from .raycast import HAVE_COMPILED, RaycastScene, RayHit, raycast, scene_for
from .synthetic import (
    BoxObstacle,
    analytic_first_hit,
    default_box_rig,
    look_rotation,
    scan_box_room,
)
from .types import (
    CameraRig,
    CubeDepthMap,
    CylindricalDepthImage,
    DepthFrame,
    PanoramaImage,
    PinholeModel,
    ProjectorFrame,
    RoomBox,
    TriMesh,
    vec3,
)
from .walls import control_mask, remove_walls

__all__ = [
    "BoxObstacle",
    "CameraRig",
    "CubeDepthMap",
    "CylindricalDepthImage",
    "DepthFrame",
    "HAVE_COMPILED",
    "OCCLUSION_EPSILON_M",
    "PanoramaImage",
    "PinholeModel",
    "ProjectorFrame",
    "RayHit",
    "RaycastScene",
    "RoomBox",
    "TriMesh",
    "analytic_first_hit",
    "angles_to_dirs",
    "angles_to_pixel",
    "bilinear_sample",
    "control_mask",
    "cube_to_cylindrical",
    "default_box_rig",
    "dirs_to_angles",
    "fuse_depth_frames",
    "look_rotation",
    "nearest_pixel",
    "pixel_angles",
    "pixel_dirs",
    "projector_hits",
    "raycast",
    "remove_walls",
    "render_cube_depth",
    "render_projector_view",
    "scan_box_room",
    "scene_for",
    "shade_projector_view",
    "vec3",
]
