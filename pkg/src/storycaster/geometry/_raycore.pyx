# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled ray-casting core: BVH traversal with Moller-Trumbore tests.

The BVH is built in Python (see raycast.py) and passed in as flat arrays.
Scalar arithmetic matches the numpy fallback expression-for-expression and
the module is compiled with FP contraction off, so hit distances are
bit-identical across backends.
"""

from libc.math cimport fabs, INFINITY

import numpy as np
cimport numpy as cnp

cnp.import_array()

cdef double DET_EPS = 1e-12
cdef double T_MIN = 1e-9
# matches the fallback: edge-grazing rays must not slip between triangles
cdef double EDGE_EPS = 1e-9

cdef enum:
    STACK_CAP = 128


cdef inline bint _hit_tri(
    const double* v0, const double* e1, const double* e2,
    double ox, double oy, double oz,
    double dx, double dy, double dz,
    double* t_out,
) nogil:
    cdef double px = dy * e2[2] - dz * e2[1]
    cdef double py = dz * e2[0] - dx * e2[2]
    cdef double pz = dx * e2[1] - dy * e2[0]
    cdef double det = e1[0] * px + e1[1] * py + e1[2] * pz
    if fabs(det) < DET_EPS:
        return False
    cdef double inv = 1.0 / det
    cdef double tx = ox - v0[0]
    cdef double ty = oy - v0[1]
    cdef double tz = oz - v0[2]
    cdef double u = (tx * px + ty * py + tz * pz) * inv
    if u < -EDGE_EPS or u > 1.0 + EDGE_EPS:
        return False
    cdef double qx = ty * e1[2] - tz * e1[1]
    cdef double qy = tz * e1[0] - tx * e1[2]
    cdef double qz = tx * e1[1] - ty * e1[0]
    cdef double v = (dx * qx + dy * qy + dz * qz) * inv
    if v < -EDGE_EPS or u + v > 1.0 + EDGE_EPS:
        return False
    cdef double t = (e2[0] * qx + e2[1] * qy + e2[2] * qz) * inv
    if t <= T_MIN:
        return False
    t_out[0] = t
    return True


cdef inline double _aabb_enter(
    const double* bmin, const double* bmax,
    double ox, double oy, double oz,
    double dx, double dy, double dz,
    double tmax,
) nogil:
    """Entry distance of ray into AABB within [0, tmax], or INFINITY."""
    cdef double tlo = 0.0
    cdef double thi = tmax
    cdef double o, d, b0, b1, t0, t1, tmp
    cdef int ax
    for ax in range(3):
        if ax == 0:
            o = ox; d = dx
        elif ax == 1:
            o = oy; d = dy
        else:
            o = oz; d = dz
        b0 = bmin[ax]
        b1 = bmax[ax]
        if fabs(d) < 1e-30:
            if o < b0 or o > b1:
                return INFINITY
        else:
            t0 = (b0 - o) / d
            t1 = (b1 - o) / d
            if t0 > t1:
                tmp = t0; t0 = t1; t1 = tmp
            if t0 > tlo:
                tlo = t0
            if t1 < thi:
                thi = t1
            if tlo > thi:
                return INFINITY
    return tlo


def cast_rays(
    double[:, ::1] verts,
    int[:, ::1] tris,
    double[:, ::1] bmin,
    double[:, ::1] bmax,
    int[::1] left,
    int[::1] right,
    int[::1] start,
    int[::1] count,
    int[::1] order,
    double[:, ::1] origins,
    double[:, ::1] dirs,
):
    """Nearest (t, triangle) per ray; misses hold t = +inf and index = -1.

    Equal distances resolve to the lowest original triangle index, matching
    the brute-force fallback.
    """
    cdef Py_ssize_t n_rays = origins.shape[0]
    cdef Py_ssize_t n_tris = tris.shape[0]
    out_t_arr = np.full(n_rays, np.inf)
    out_idx_arr = np.full(n_rays, -1, dtype=np.int64)
    cdef double[::1] out_t = out_t_arr
    cdef long long[::1] out_idx = out_idx_arr
    if n_tris == 0:
        return out_t_arr, out_idx_arr

    # per-triangle precompute in BVH leaf order
    pre_arr = np.empty((n_tris, 9))
    cdef double[:, ::1] pre = pre_arr
    cdef Py_ssize_t k, ti
    for k in range(n_tris):
        ti = order[k]
        pre[k, 0] = verts[tris[ti, 0], 0]
        pre[k, 1] = verts[tris[ti, 0], 1]
        pre[k, 2] = verts[tris[ti, 0], 2]
        pre[k, 3] = verts[tris[ti, 1], 0] - pre[k, 0]
        pre[k, 4] = verts[tris[ti, 1], 1] - pre[k, 1]
        pre[k, 5] = verts[tris[ti, 1], 2] - pre[k, 2]
        pre[k, 6] = verts[tris[ti, 2], 0] - pre[k, 0]
        pre[k, 7] = verts[tris[ti, 2], 1] - pre[k, 1]
        pre[k, 8] = verts[tris[ti, 2], 2] - pre[k, 2]

    cdef int[STACK_CAP] stack
    cdef int sp, node, lc, rc, leaf_lo, leaf_n
    cdef Py_ssize_t r
    cdef double ox, oy, oz, dx, dy, dz
    cdef double best_t, t_hit, t_near, tl, tr, limit
    cdef long long best_i, cand
    with nogil:
        for r in range(n_rays):
            ox = origins[r, 0]; oy = origins[r, 1]; oz = origins[r, 2]
            dx = dirs[r, 0]; dy = dirs[r, 1]; dz = dirs[r, 2]
            best_t = INFINITY
            best_i = -1
            sp = 0
            stack[sp] = 0
            sp += 1
            while sp > 0:
                sp -= 1
                node = stack[sp]
                # slab arithmetic can land a few ULPs above a hit that lies
                # exactly on a node face; prune with slack so equal-distance
                # ties always get visited and resolve by lowest index
                limit = best_t + best_t * 1e-12 + 1e-12
                t_near = _aabb_enter(&bmin[node, 0], &bmax[node, 0],
                                     ox, oy, oz, dx, dy, dz, limit)
                if t_near > limit:
                    continue
                lc = left[node]
                if lc < 0:
                    leaf_lo = start[node]
                    leaf_n = count[node]
                    for k in range(leaf_lo, leaf_lo + leaf_n):
                        if _hit_tri(&pre[k, 0], &pre[k, 3], &pre[k, 6],
                                    ox, oy, oz, dx, dy, dz, &t_hit):
                            cand = order[k]
                            if t_hit < best_t or (t_hit == best_t and cand < best_i):
                                best_t = t_hit
                                best_i = cand
                                limit = best_t + best_t * 1e-12 + 1e-12
                else:
                    rc = right[node]
                    tl = _aabb_enter(&bmin[lc, 0], &bmax[lc, 0],
                                     ox, oy, oz, dx, dy, dz, limit)
                    tr = _aabb_enter(&bmin[rc, 0], &bmax[rc, 0],
                                     ox, oy, oz, dx, dy, dz, limit)
                    # push far child first so the near one pops first
                    if tl <= tr:
                        if tr != INFINITY and sp < STACK_CAP:
                            stack[sp] = rc; sp += 1
                        if tl != INFINITY and sp < STACK_CAP:
                            stack[sp] = lc; sp += 1
                    else:
                        if tl != INFINITY and sp < STACK_CAP:
                            stack[sp] = lc; sp += 1
                        if tr != INFINITY and sp < STACK_CAP:
                            stack[sp] = rc; sp += 1
            out_t[r] = best_t
            out_idx[r] = best_i

    return out_t_arr, out_idx_arr
