#!/usr/bin/env python3
"""Compare the compiled BVH ray caster against the numpy fallback.

Usage: python benchmarks/raycast_bench.py [n_rays]

Builds the demo box room mesh, fires a fixed random ray batch from the room
center through both backends, checks the results agree exactly, and reports
throughput.
"""

import sys
import time
from pathlib import Path

import numpy as np

sys.path.insert(0, str(Path(__file__).resolve().parents[1] / "src"))

from storycaster.geometry import (  # noqa: E402
    RaycastScene,
    RoomBox,
    default_box_rig,
    fuse_depth_frames,
    scan_box_room,
    vec3,
)
from storycaster.geometry.raycast import HAVE_COMPILED  # noqa: E402


def main() -> int:
    n_rays = int(sys.argv[1]) if len(sys.argv) > 1 else 50_000
    room = RoomBox(2.0, 2.0, 3.0)
    rig = default_box_rig(room, cam_width=96, cam_height=72)
    mesh = fuse_depth_frames(rig, scan_box_room(rig, room))
    print(f"mesh: {mesh.n_triangles} triangles; batch: {n_rays} rays")

    rng = np.random.default_rng(0)
    dirs = rng.normal(size=(n_rays, 3))
    dirs /= np.linalg.norm(dirs, axis=1, keepdims=True)
    origins = np.broadcast_to(vec3(0, 0, 1.5), dirs.shape)

    results = {}
    backends = ["numpy"] + (["compiled"] if HAVE_COMPILED else [])
    if not HAVE_COMPILED:
        print("compiled core not built (python setup.py build_ext --inplace); "
              "benchmarking the fallback only")
    for backend in backends:
        t0 = time.perf_counter()
        scene = RaycastScene(mesh, backend)
        build_s = time.perf_counter() - t0
        t0 = time.perf_counter()
        t, idx = scene.cast(origins, dirs)
        cast_s = time.perf_counter() - t0
        results[backend] = (t, idx, cast_s)
        print(
            f"{backend:>9}: prep {build_s * 1e3:7.1f} ms   "
            f"cast {cast_s:7.3f} s   {n_rays / cast_s:12,.0f} rays/s   "
            f"hits {int(np.isfinite(t).sum())}"
        )

    if len(results) == 2:
        (t_a, i_a, s_a) = results["numpy"]
        (t_b, i_b, s_b) = results["compiled"]
        identical = np.array_equal(t_a, t_b) and np.array_equal(i_a, i_b)
        print(f"results bit-identical: {identical}   speedup: {s_a / s_b:.1f}x")
        return 0 if identical else 1
    return 0


if __name__ == "__main__":
    sys.exit(main())
