"""Equirectangular pixel/direction mapping (the normative panorama layout).

Pixel (u, v) of a W x H panorama (W = 2H) maps to

    azimuth   theta = 2*pi * (u + 0.5) / W     measured from +x toward +y
    elevation phi   = pi * (v + 0.5) / H - pi/2

with v = 0 the bottom row (phi = -pi/2, straight down).  The direction of a
pixel is (cos(phi)*cos(theta), cos(phi)*sin(theta), sin(phi)) and depth is
the Euclidean distance from the panorama center along that direction.

Arrays index as [v, u], so array row 0 is the downward-looking band; PNG
serialization flips rows so saved images read top-of-scene-up.
"""

from __future__ import annotations

import numpy as np

TWO_PI = 2.0 * np.pi


def pixel_angles(width: int, height: int) -> tuple[np.ndarray, np.ndarray]:
    """Per-pixel (theta, phi) grids, each of shape (H, W)."""
    u = np.arange(width, dtype=np.float64)
    v = np.arange(height, dtype=np.float64)
    theta = TWO_PI * (u + 0.5) / width
    phi = np.pi * (v + 0.5) / height - np.pi / 2
    return np.broadcast_to(theta, (height, width)), np.broadcast_to(
        phi[:, None], (height, width)
    )


def angles_to_dirs(theta: np.ndarray, phi: np.ndarray) -> np.ndarray:
    """Unit directions for angle arrays; output shape = theta.shape + (3,)."""
    cp = np.cos(phi)
    return np.stack([cp * np.cos(theta), cp * np.sin(theta), np.sin(phi)], axis=-1)


def pixel_dirs(width: int, height: int) -> np.ndarray:
    """Unit direction of every panorama pixel, shape (H, W, 3)."""
    theta, phi = pixel_angles(width, height)
    return angles_to_dirs(theta, phi)


def dirs_to_angles(dirs: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    """(theta in [0, 2pi), phi in [-pi/2, pi/2]) for unit directions."""
    d = np.asarray(dirs, dtype=np.float64)
    theta = np.mod(np.arctan2(d[..., 1], d[..., 0]), TWO_PI)
    phi = np.arcsin(np.clip(d[..., 2], -1.0, 1.0))
    return theta, phi


def angles_to_pixel(
    theta: np.ndarray, phi: np.ndarray, width: int, height: int
) -> tuple[np.ndarray, np.ndarray]:
    """Continuous pixel coordinates (u, v); integer values are pixel centers.

    u wraps modulo width; v is clamped to the valid row range by callers.
    """
    u = np.asarray(theta) * width / TWO_PI - 0.5
    v = (np.asarray(phi) + np.pi / 2) * height / np.pi - 0.5
    return u, v


def nearest_pixel(
    theta: np.ndarray, phi: np.ndarray, width: int, height: int
) -> tuple[np.ndarray, np.ndarray]:
    """Nearest integer pixel indices for angles; u wrapped, v clamped."""
    u, v = angles_to_pixel(theta, phi, width, height)
    ui = np.mod(np.rint(u).astype(np.int64), width)
    vi = np.clip(np.rint(v).astype(np.int64), 0, height - 1)
    return ui, vi
