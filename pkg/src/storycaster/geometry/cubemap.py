"""Cube-map depth rendering and equirectangular conversion.

The room mesh is rendered once into six radial-depth faces around a center
point, then resampled into the full equirectangular layout.  Depth is always
the Euclidean distance from the center, never planar z, so the cube-to-
panorama step is a pure direction lookup with no range correction.

Depth is sampled nearest-neighbor on purpose: interpolating across a depth
discontinuity would invent surfaces that exist in neither neighbor.
"""

from __future__ import annotations

import numpy as np

from ..errors import GeometryError
from .equirect import pixel_dirs
from .raycast import scene_for
from .types import CubeDepthMap, CylindricalDepthImage, TriMesh

# remaining-axis order per dominant face: (s axis, t axis)
_FACE_AXES = {0: (1, 2), 1: (0, 2), 2: (0, 1)}


def _face_dirs(face: int, res: int) -> np.ndarray:
    """Unnormalized ray directions for all pixels of one cube face."""
    axis = face // 2
    sign = 1.0 if face % 2 == 0 else -1.0
    sa, ta = _FACE_AXES[axis]
    g = (2.0 * (np.arange(res, dtype=np.float64) + 0.5) / res) - 1.0
    d = np.empty((res, res, 3))
    d[..., axis] = sign
    d[..., sa] = g[None, :]  # s along columns (i)
    d[..., ta] = g[:, None]  # t along rows (j)
    return d


def render_cube_depth(mesh: TriMesh, center: np.ndarray, face_res: int) -> CubeDepthMap:
    """Radial depth of the nearest surface in every cube-face direction.

    Pixels whose ray misses the mesh hold 0.
    """
    if face_res < 16:
        raise GeometryError("face_res must be at least 16")
    if not mesh.n_triangles:
        raise GeometryError("cannot render an empty mesh")
    center = np.asarray(center, dtype=np.float64).reshape(3)
    lo, hi = mesh.bounds()
    # strictly inside on every axis the mesh actually spans (a flat scene,
    # like a single wall, constrains only the axes it extends along)
    spans = (hi - lo) > 1e-9
    if np.any(spans & ~((center > lo) & (center < hi))):
        raise GeometryError("center must lie strictly inside the mesh bounds")

    scene = scene_for(mesh)
    faces = np.zeros((6, face_res, face_res))
    for face in range(6):
        d = _face_dirs(face, face_res).reshape(-1, 3)
        norms = np.linalg.norm(d, axis=1, keepdims=True)
        unit = d / norms
        origins = np.broadcast_to(center, unit.shape)
        t, idx = scene.cast(origins, unit)
        depth = np.where(idx >= 0, t, 0.0)
        faces[face] = depth.reshape(face_res, face_res)
    return CubeDepthMap(faces, center)


def _sample_cube(cube: CubeDepthMap, dirs: np.ndarray) -> np.ndarray:
    """Nearest-neighbor radial depth for unit directions of any shape (..., 3)."""
    d = np.asarray(dirs, dtype=np.float64)
    flat = d.reshape(-1, 3)
    res = cube.face_res
    ax = np.argmax(np.abs(flat), axis=1)
    dom = flat[np.arange(len(flat)), ax]
    face = ax * 2 + (dom < 0).astype(np.int64)
    sa = np.array([1, 0, 0])[ax]
    ta = np.array([2, 2, 1])[ax]
    inv = 1.0 / np.abs(dom)
    s = flat[np.arange(len(flat)), sa] * inv
    t = flat[np.arange(len(flat)), ta] * inv
    i = np.clip(np.rint((s + 1.0) * res / 2.0 - 0.5).astype(np.int64), 0, res - 1)
    j = np.clip(np.rint((t + 1.0) * res / 2.0 - 0.5).astype(np.int64), 0, res - 1)
    out = cube.faces[face, j, i]
    return out.reshape(d.shape[:-1])


def cube_to_cylindrical(cube: CubeDepthMap, width: int) -> CylindricalDepthImage:
    """Resample a cube depth map into the equirectangular panorama layout."""
    if width < 64 or width % 2:
        raise GeometryError("panorama width must be even and >= 64")
    height = width // 2
    dirs = pixel_dirs(width, height)
    depth = _sample_cube(cube, dirs)
    return CylindricalDepthImage(depth, cube.center.copy())
