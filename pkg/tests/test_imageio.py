import numpy as np

from storycaster.geometry import CylindricalDepthImage, PanoramaImage, vec3
from storycaster.imageio import (
    load_depth_png,
    load_mask_png,
    load_pano_png,
    save_depth_png,
    save_mask_png,
    save_pano_png,
)


def test_depth_png_round_trip_in_millimeters(tmp_path):
    rng = np.random.default_rng(0)
    depth = rng.uniform(0, 10, (64, 128))
    depth[rng.random((64, 128)) < 0.2] = 0.0
    cyl = CylindricalDepthImage(depth, vec3(0, 0, 1))
    path = tmp_path / "d.png"
    save_depth_png(cyl, path)
    back = load_depth_png(path, cyl.center)
    assert back.depth.shape == depth.shape
    assert np.abs(back.depth - depth).max() <= 0.0005 + 1e-9  # half a millimeter
    assert np.array_equal(back.depth == 0, depth < 0.0005)


def test_pano_png_round_trip_exact(tmp_path):
    rng = np.random.default_rng(1)
    px = rng.integers(0, 256, (32, 64, 3), dtype=np.uint8)
    path = tmp_path / "p.png"
    save_pano_png(PanoramaImage(px), path)
    assert np.array_equal(load_pano_png(path).pixels, px)


def test_mask_png_round_trip_and_threshold(tmp_path):
    mask = np.zeros((16, 32), dtype=bool)
    mask[4:9, 10:20] = True
    path = tmp_path / "m.png"
    save_mask_png(mask, path)
    assert np.array_equal(load_mask_png(path), mask)
