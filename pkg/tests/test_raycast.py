import numpy as np
import pytest

from storycaster.errors import GeometryError
from storycaster.geometry import RaycastScene, TriMesh, raycast, vec3
from storycaster.geometry.raycast import HAVE_COMPILED

from .oracles import brute_force_raycast


def wall_mesh(x=2.0, half=3.0):
    verts = np.array(
        [[x, -half, -half], [x, half, -half], [x, half, half], [x, -half, half]]
    )
    tris = np.array([[0, 1, 2], [0, 2, 3]], dtype=np.int32)
    return TriMesh(verts, tris)


def test_ray_hits_wall_at_exact_distance():
    hit = raycast(wall_mesh(), vec3(0, 0, 0), vec3(1, 0, 0))
    assert hit is not None
    assert hit.distance == pytest.approx(2.0, abs=1e-12)


def test_ray_away_from_geometry_misses():
    assert raycast(wall_mesh(), vec3(0, 0, 0), vec3(-1, 0, 0)) is None


def test_unnormalized_direction_rejected():
    with pytest.raises(GeometryError):
        raycast(wall_mesh(), vec3(0, 0, 0), vec3(2, 0, 0))


def test_empty_mesh_rejected():
    with pytest.raises(GeometryError):
        RaycastScene(TriMesh(np.zeros((0, 3)), np.zeros((0, 3), dtype=np.int32)))


def test_tie_breaks_to_lowest_triangle_index():
    # two coincident walls: triangles 0/1 duplicate 2/3 at the same plane
    verts = np.array(
        [[2, -1, -1], [2, 1, -1], [2, 1, 1], [2, -1, 1]] * 2, dtype=np.float64
    )
    tris = np.array(
        [[0, 1, 2], [0, 2, 3], [4, 5, 6], [4, 6, 7]], dtype=np.int32
    )
    mesh = TriMesh(verts, tris)
    for backend in ("numpy", "compiled") if HAVE_COMPILED else ("numpy",):
        scene = RaycastScene(mesh, backend)
        hit = scene.cast_one(vec3(0, 0.2, 0.1), vec3(1, 0, 0))
        assert hit.triangle in (0, 1)  # never the duplicate at 2/3


@pytest.mark.skipif(not HAVE_COMPILED, reason="compiled core not built")
def test_accelerated_equals_naive_scan_exactly(box_mesh, center):
    rng = np.random.default_rng(42)
    n = 10_000
    dirs = rng.normal(size=(n, 3))
    dirs /= np.linalg.norm(dirs, axis=1, keepdims=True)
    origins = np.broadcast_to(center, (n, 3))

    fast = RaycastScene(box_mesh, "compiled")
    naive = RaycastScene(box_mesh, "numpy")
    t_fast, i_fast = fast.cast(origins, dirs)
    t_naive, i_naive = naive.cast(origins, dirs)
    assert np.array_equal(t_fast, t_naive)
    assert np.array_equal(i_fast, i_naive)


def test_backends_agree_with_independent_oracle(box_mesh, center):
    rng = np.random.default_rng(7)
    n = 500
    dirs = rng.normal(size=(n, 3))
    dirs /= np.linalg.norm(dirs, axis=1, keepdims=True)
    origins = np.broadcast_to(center, (n, 3))

    t_ref, _ = brute_force_raycast(box_mesh.vertices, box_mesh.triangles, origins, dirs)
    t_sys, _ = RaycastScene(box_mesh).cast(origins, dirs)
    both_hit = np.isfinite(t_ref) & np.isfinite(t_sys)
    assert both_hit.mean() > 0.6
    assert np.abs(t_ref[both_hit] - t_sys[both_hit]).max() < 1e-9
