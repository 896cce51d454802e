"""Pure-numpy ray casting kernels (fallback when the compiled core is absent).

Brute-force Moller-Trumbore over every triangle, vectorized over triangles
and chunked over rays.  The arithmetic here deliberately mirrors the scalar
expressions in the compiled core, term for term, so both backends produce
bit-identical hit distances (the compiled core is built with FP contraction
disabled for the same reason).
"""

from __future__ import annotations

import numpy as np

DET_EPS = 1e-12
T_MIN = 1e-9
# barycentric slack: rays grazing a shared edge must hit at least one of the
# adjacent triangles instead of slipping between both
EDGE_EPS = 1e-9

# keep chunk * n_triangles around this many pairs to bound peak memory
_PAIR_BUDGET = 1_500_000


def cast_rays(
    vertices: np.ndarray,
    triangles: np.ndarray,
    origins: np.ndarray,
    dirs: np.ndarray,
) -> tuple[np.ndarray, np.ndarray]:
    """Nearest hits for each ray.

    Returns (t, tri_index); misses hold t = +inf and index = -1.  Equal-distance
    ties resolve to the lowest triangle index.
    """
    v0 = vertices[triangles[:, 0]]
    v1 = vertices[triangles[:, 1]]
    v2 = vertices[triangles[:, 2]]
    e1 = v1 - v0
    e2 = v2 - v0

    n_rays = len(origins)
    n_tris = len(triangles)
    out_t = np.full(n_rays, np.inf)
    out_idx = np.full(n_rays, -1, dtype=np.int64)
    if n_tris == 0:
        return out_t, out_idx

    chunk = max(1, min(n_rays, _PAIR_BUDGET // max(1, n_tris)))
    e1x, e1y, e1z = e1[:, 0], e1[:, 1], e1[:, 2]
    e2x, e2y, e2z = e2[:, 0], e2[:, 1], e2[:, 2]
    v0x, v0y, v0z = v0[:, 0], v0[:, 1], v0[:, 2]

    for lo in range(0, n_rays, chunk):
        hi = min(lo + chunk, n_rays)
        ox = origins[lo:hi, 0:1]
        oy = origins[lo:hi, 1:2]
        oz = origins[lo:hi, 2:3]
        dx = dirs[lo:hi, 0:1]
        dy = dirs[lo:hi, 1:2]
        dz = dirs[lo:hi, 2:3]

        px = dy * e2z - dz * e2y
        py = dz * e2x - dx * e2z
        pz = dx * e2y - dy * e2x
        det = e1x * px + e1y * py + e1z * pz
        with np.errstate(divide="ignore", invalid="ignore"):
            inv = 1.0 / det
            tx = ox - v0x
            ty = oy - v0y
            tz = oz - v0z
            u = (tx * px + ty * py + tz * pz) * inv
            qx = ty * e1z - tz * e1y
            qy = tz * e1x - tx * e1z
            qz = tx * e1y - ty * e1x
            v = (dx * qx + dy * qy + dz * qz) * inv
            t = (e2x * qx + e2y * qy + e2z * qz) * inv
        ok = (
            (np.abs(det) >= DET_EPS)
            & (u >= -EDGE_EPS)
            & (u <= 1.0 + EDGE_EPS)
            & (v >= -EDGE_EPS)
            & (u + v <= 1.0 + EDGE_EPS)
            & (t > T_MIN)
        )
        t = np.where(ok, t, np.inf)
        best = np.argmin(t, axis=1)
        rows = np.arange(hi - lo)
        best_t = t[rows, best]
        hit = np.isfinite(best_t)
        out_t[lo:hi] = best_t
        out_idx[lo:hi] = np.where(hit, best, -1)

    return out_t, out_idx
