"""Depth-frame fusion into a room mesh.

Each camera's depth grid is triangulated independently: every 2x2 quad of
valid pixels whose triangle edges are all shorter than ``max_edge`` emits two
triangles, back-projected through that camera and transformed to the room
frame.  Per-camera meshes are concatenated with no stitching or dedup;
duplicated surfaces are harmless to ray casting.
"""

from __future__ import annotations

import logging

import numpy as np

from ..errors import GeometryError
from .types import CameraRig, DepthFrame, TriMesh

log = logging.getLogger(__name__)

#: Quads with any triangle edge at or above this length (meters) are dropped;
#: they bridge depth discontinuities rather than sample a surface.
MAX_EDGE_M = 0.2

_AREA_EPS = 1e-12


def _triangulate_frame(
    rig: CameraRig, frame: DepthFrame, max_edge: float
) -> tuple[np.ndarray, np.ndarray, np.ndarray | None]:
    cam = rig.camera(frame.camera_name)
    h, w = frame.depth.shape
    if (w, h) != (cam.width, cam.height):
        raise GeometryError(
            f"frame for {cam.name!r} is {w}x{h}, camera expects {cam.width}x{cam.height}"
        )
    pts = cam.backproject(frame.depth)
    valid = frame.depth > 0

    # vertex ids per valid pixel, row-major
    vid = np.full((h, w), -1, dtype=np.int64)
    vid[valid] = np.arange(int(valid.sum()))
    verts = pts[valid]
    colors = frame.color[valid] if frame.color is not None else None

    p00 = pts[:-1, :-1]
    p10 = pts[:-1, 1:]
    p01 = pts[1:, :-1]
    p11 = pts[1:, 1:]
    ok = valid[:-1, :-1] & valid[:-1, 1:] & valid[1:, :-1] & valid[1:, 1:]

    def edge(a, b):
        return np.linalg.norm(a - b, axis=-1)

    lengths = np.stack(
        [edge(p00, p10), edge(p00, p01), edge(p10, p11), edge(p01, p11), edge(p10, p01)]
    )
    ok &= np.all(lengths < max_edge, axis=0)

    qj, qi = np.nonzero(ok)
    i00 = vid[qj, qi]
    i10 = vid[qj, qi + 1]
    i01 = vid[qj + 1, qi]
    i11 = vid[qj + 1, qi + 1]
    # split along the p10-p01 diagonal
    tris = np.concatenate(
        [
            np.stack([i00, i10, i01], axis=1),
            np.stack([i10, i11, i01], axis=1),
        ]
    ).astype(np.int32)

    if len(tris):
        tv = verts[tris]
        areas = 0.5 * np.linalg.norm(
            np.cross(tv[:, 1] - tv[:, 0], tv[:, 2] - tv[:, 0]), axis=1
        )
        tris = tris[areas > _AREA_EPS]
    return verts, tris, colors


def fuse_depth_frames(
    rig: CameraRig, frames: list[DepthFrame], max_edge: float = MAX_EDGE_M
) -> TriMesh:
    """Fuse per-camera depth grids into one room-frame triangle mesh.

    Raises :class:`GeometryError` for unknown cameras, dimension mismatches,
    or when no frame contributes a single triangle.
    """
    all_verts: list[np.ndarray] = []
    all_tris: list[np.ndarray] = []
    all_colors: list[np.ndarray] = []
    have_color = all(f.color is not None for f in frames)
    offset = 0
    for frame in frames:
        verts, tris, colors = _triangulate_frame(rig, frame, max_edge)
        if len(tris) == 0:
            continue
        all_verts.append(verts)
        all_tris.append(tris + offset)
        if have_color:
            all_colors.append(colors)
        offset += len(verts)
    if not all_tris:
        raise GeometryError("no valid depth pixels: fusion produced an empty mesh")
    mesh = TriMesh(
        np.concatenate(all_verts),
        np.concatenate(all_tris),
        np.concatenate(all_colors) if have_color else None,
    )
    log.debug(
        "fused %d frames -> %d vertices, %d triangles",
        len(frames),
        len(mesh.vertices),
        mesh.n_triangles,
    )
    return mesh
