"""Per-projector frame computation with occlusion blackout.

Every projector pixel's ray is cast into the room mesh.  The hit point is
expressed in panorama angles about the panorama center; if the panorama's
depth there disagrees with the hit's radial distance by more than the
occlusion epsilon (or was removed entirely), the surface point is invisible
from the panorama center and the pixel renders black.  Visible pixels sample
the panorama bilinearly.
"""

from __future__ import annotations

import numpy as np

from ..errors import GeometryError
from .equirect import angles_to_pixel, dirs_to_angles, nearest_pixel
from .raycast import scene_for
from .types import CylindricalDepthImage, PanoramaImage, PinholeModel, ProjectorFrame, TriMesh

#: Tolerated disagreement (meters) between a surface hit's radial distance and
#: the panorama depth before the pixel is declared occluded.  Must exceed the
#: panorama's angular quantization error at room scale.
OCCLUSION_EPSILON_M = 0.03


def bilinear_sample(pano: PanoramaImage, theta: np.ndarray, phi: np.ndarray) -> np.ndarray:
    """Bilinear RGB lookup at angle arrays; wraps azimuth, clamps elevation."""
    w, h = pano.width, pano.height
    u, v = angles_to_pixel(theta, phi, w, h)
    u0 = np.floor(u).astype(np.int64)
    v0 = np.floor(v).astype(np.int64)
    fu = (u - u0)[..., None]
    fv = (v - v0)[..., None]
    u0w = np.mod(u0, w)
    u1w = np.mod(u0 + 1, w)
    v0c = np.clip(v0, 0, h - 1)
    v1c = np.clip(v0 + 1, 0, h - 1)
    px = pano.pixels.astype(np.float64)
    c00 = px[v0c, u0w]
    c10 = px[v0c, u1w]
    c01 = px[v1c, u0w]
    c11 = px[v1c, u1w]
    top = c00 * (1 - fu) + c10 * fu
    bot = c01 * (1 - fu) + c11 * fu
    return top * (1 - fv) + bot * fv


def projector_hits(mesh: TriMesh, projector: PinholeModel):
    """Cast all projector pixel rays; returns (hit mask (H,W), points (H,W,3)).

    Cache this per (mesh, projector) when rendering several panoramas against
    static room geometry.
    """
    dirs = projector.pixel_rays().reshape(-1, 3)
    origins = np.broadcast_to(projector.translation, dirs.shape)
    t, idx = scene_for(mesh).cast(origins, dirs)
    hit = idx >= 0
    pts = projector.translation + dirs * np.where(hit, t, 0.0)[:, None]
    shape = (projector.height, projector.width)
    return hit.reshape(shape), pts.reshape(shape + (3,))


def shade_projector_view(
    hit: np.ndarray,
    points: np.ndarray,
    pano: PanoramaImage,
    cyl: CylindricalDepthImage,
    occlusion_epsilon: float = OCCLUSION_EPSILON_M,
) -> np.ndarray:
    """Color precomputed surface hits against one panorama + depth pair."""
    rel = points - cyl.center
    r = np.linalg.norm(rel, axis=-1)
    safe = np.where(r > 0, r, 1.0)
    theta, phi = dirs_to_angles(rel / safe[..., None])
    ui, vi = nearest_pixel(theta, phi, cyl.width, cyl.height)
    pd = cyl.depth[vi, ui]
    visible = hit & (pd > 0) & (np.abs(r - pd) <= occlusion_epsilon)
    colors = bilinear_sample(pano, theta, phi)
    out = np.zeros(points.shape[:2] + (3,), dtype=np.uint8)
    out[visible] = np.clip(np.rint(colors[visible]), 0, 255).astype(np.uint8)
    return out


def render_projector_view(
    mesh: TriMesh,
    projector: PinholeModel,
    pano: PanoramaImage,
    cyl: CylindricalDepthImage,
    occlusion_epsilon: float = OCCLUSION_EPSILON_M,
) -> ProjectorFrame:
    """The frame one projector should display for a generated panorama.

    Requires the panorama and depth to share dimensions and center; pixels
    whose surface point is occluded (or whose ray misses) are exactly black.
    """
    if (pano.width, pano.height) != (cyl.width, cyl.height):
        raise GeometryError("panorama and depth dimensions differ")
    hit, points = projector_hits(mesh, projector)
    pixels = shade_projector_view(hit, points, pano, cyl, occlusion_epsilon)
    return ProjectorFrame(projector.name, pixels)
