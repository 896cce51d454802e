"""Ray casting against a room mesh.

Two interchangeable backends implement the same contract:

* ``compiled`` -- a Cython BVH traversal (:mod:`._raycore`), built once per
  mesh and reused; this is the hot path for cube-map rendering, projector
  reprojection, and occlusion tests.
* ``numpy`` -- a brute-force vectorized scan (:mod:`._raypy`); always
  available, used as the import-time fallback and as the naive reference the
  accelerated path is checked against.

Selection happens at import: the compiled core is preferred when present;
set ``STORYCASTER_PURE_PYTHON=1`` to force the fallback.  Both backends
return bit-identical distances (see the kernel sources for why).
"""

from __future__ import annotations

import logging
import os
from dataclasses import dataclass

import numpy as np

from ..errors import GeometryError
from . import _raypy
from .types import TriMesh

log = logging.getLogger(__name__)

try:
    from . import _raycore  # compiled extension, optional
except ImportError:  # pragma: no cover - depends on build environment
    _raycore = None

FORCE_FALLBACK = os.environ.get("STORYCASTER_PURE_PYTHON", "") == "1"
HAVE_COMPILED = _raycore is not None and not FORCE_FALLBACK

_LEAF_SIZE = 8
_MAX_DEPTH = 60


@dataclass(frozen=True)
class RayHit:
    distance: float
    triangle: int


def _build_bvh(vertices: np.ndarray, triangles: np.ndarray):
    """Flatten a median-split BVH into traversal arrays."""
    n = len(triangles)
    tv = vertices[triangles]  # (n, 3, 3)
    tri_min = tv.min(axis=1)
    tri_max = tv.max(axis=1)
    centroids = (tri_min + tri_max) * 0.5

    bounds_min: list[np.ndarray] = []
    bounds_max: list[np.ndarray] = []
    left: list[int] = []
    right: list[int] = []
    start: list[int] = []
    count: list[int] = []
    order = np.arange(n, dtype=np.int32)

    def new_node(idx: np.ndarray) -> int:
        node = len(left)
        bounds_min.append(tri_min[idx].min(axis=0))
        bounds_max.append(tri_max[idx].max(axis=0))
        left.append(-1)
        right.append(-1)
        start.append(0)
        count.append(0)
        return node

    # iterative split to keep recursion depth off the Python stack
    segments: list[tuple[int, int, int, int]] = []  # (node, lo, hi, depth)
    root = new_node(order)
    segments.append((root, 0, n, 0))
    while segments:
        node, lo, hi, depth = segments.pop()
        idx = order[lo:hi]
        if hi - lo <= _LEAF_SIZE or depth >= _MAX_DEPTH:
            start[node] = lo
            count[node] = hi - lo
            continue
        c = centroids[idx]
        axis = int(np.argmax(c.max(axis=0) - c.min(axis=0)))
        mid = (hi - lo) // 2
        part = np.argpartition(c[:, axis], mid)
        order[lo:hi] = idx[part]
        lo_idx = order[lo : lo + mid]
        hi_idx = order[lo + mid : hi]
        if not len(lo_idx) or not len(hi_idx):  # degenerate spread
            start[node] = lo
            count[node] = hi - lo
            continue
        lc = new_node(lo_idx)
        rc = new_node(hi_idx)
        left[node] = lc
        right[node] = rc
        segments.append((lc, lo, lo + mid, depth + 1))
        segments.append((rc, lo + mid, hi, depth + 1))

    return (
        np.ascontiguousarray(bounds_min, dtype=np.float64),
        np.ascontiguousarray(bounds_max, dtype=np.float64),
        np.asarray(left, dtype=np.int32),
        np.asarray(right, dtype=np.int32),
        np.asarray(start, dtype=np.int32),
        np.asarray(count, dtype=np.int32),
        order,
    )


class RaycastScene:
    """A mesh prepared for repeated ray queries."""

    def __init__(self, mesh: TriMesh, backend: str = "auto"):
        if not mesh.n_triangles:
            raise GeometryError("cannot ray cast an empty mesh")
        if backend == "auto":
            backend = "compiled" if HAVE_COMPILED else "numpy"
        if backend == "compiled" and _raycore is None:
            raise GeometryError("compiled ray core not built")
        if backend not in ("compiled", "numpy"):
            raise GeometryError(f"unknown backend {backend!r}")
        self.backend = backend
        self.mesh = mesh
        self._bvh = _build_bvh(mesh.vertices, mesh.triangles) if backend == "compiled" else None

    def cast(self, origins: np.ndarray, dirs: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
        """Batch query: (t, triangle_index) per ray; miss = (+inf, -1)."""
        origins = np.ascontiguousarray(origins, dtype=np.float64).reshape(-1, 3)
        dirs = np.ascontiguousarray(dirs, dtype=np.float64).reshape(-1, 3)
        if origins.shape != dirs.shape:
            raise GeometryError("origins and dirs must have matching shapes")
        if self.backend == "compiled":
            return _raycore.cast_rays(
                self.mesh.vertices, self.mesh.triangles, *self._bvh, origins, dirs
            )
        return _raypy.cast_rays(self.mesh.vertices, self.mesh.triangles, origins, dirs)

    def cast_one(self, origin: np.ndarray, direction: np.ndarray) -> RayHit | None:
        t, idx = self.cast(
            np.asarray(origin, dtype=np.float64)[None, :],
            np.asarray(direction, dtype=np.float64)[None, :],
        )
        if idx[0] < 0:
            return None
        return RayHit(float(t[0]), int(idx[0]))


def scene_for(mesh: TriMesh) -> RaycastScene:
    """Per-mesh cached scene (meshes are treated as immutable after fusion)."""
    scene = getattr(mesh, "_raycast_scene", None)
    if scene is None:
        scene = RaycastScene(mesh)
        mesh._raycast_scene = scene
    return scene


def raycast(mesh: TriMesh, origin: np.ndarray, direction: np.ndarray) -> RayHit | None:
    """Nearest positive-distance intersection of one ray with the mesh.

    ``direction`` must be unit length (within 1e-6); ties on distance break
    toward the lowest triangle index.
    """
    d = np.asarray(direction, dtype=np.float64)
    if abs(float(np.linalg.norm(d)) - 1.0) > 1e-6:
        raise GeometryError("ray direction must be normalized")
    return scene_for(mesh).cast_one(origin, d)
