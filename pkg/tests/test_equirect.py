import numpy as np

from storycaster.geometry import (
    angles_to_dirs,
    angles_to_pixel,
    dirs_to_angles,
    pixel_angles,
    pixel_dirs,
)


def test_pixel_angle_formulas():
    theta, phi = pixel_angles(512, 256)
    assert theta[0, 0] == 2 * np.pi * 0.5 / 512
    assert phi[0, 0] == np.pi * 0.5 / 256 - np.pi / 2  # row 0 looks down
    assert phi[255, 0] > 0


def test_cardinal_directions():
    dirs = pixel_dirs(512, 256)
    # middle row is the horizon
    horizon = dirs[127:129, :, 2]
    assert np.abs(horizon).max() < 0.02
    # bottom row points nearly straight down
    assert dirs[0, 0, 2] < -0.99


def test_round_trip_every_pixel():
    w, h = 256, 128
    dirs = pixel_dirs(w, h)
    theta, phi = dirs_to_angles(dirs)
    u, v = angles_to_pixel(theta, phi, w, h)
    uu, vv = np.meshgrid(np.arange(w), np.arange(h))
    # wraparound-aware difference in u
    du = (u - uu + w / 2) % w - w / 2
    assert np.abs(du).max() <= 0.5
    assert np.abs(v - vv).max() <= 0.5
    # sub-pixel accuracy away from the poles
    assert np.abs(du[1:-1]).max() < 1e-9
    assert np.abs((v - vv)[1:-1]).max() < 1e-9
