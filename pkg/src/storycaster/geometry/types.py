"""Geometric domain types for the room model.

Coordinate conventions
----------------------
Room frame (right-handed):
  - Origin at the room center on the floor plane, +z up.
  - Walls of a box room sit at x = +-half_x and y = +-half_y; the floor is
    z = 0 and the ceiling z = height.

Device frame (cameras and projectors, computer-vision style):
  - +z forward along the optical axis, +x right, +y down.
  - A pinhole pose maps device-frame points into the room frame:
    p_room = R @ p_device + t.

Pixel coordinates: integer pixel (i, j) refers to the pixel center, column i
and row j, so the back-projected ray of (i, j) at unit z-depth is
((i - cx) / fx, (j - cy) / fy, 1) in the device frame.

Equirectangular panoramas use the convention documented in
:mod:`storycaster.geometry.equirect`.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from ..errors import GeometryError

#: Depth beyond this is treated as a sensor artifact and rejected.
MAX_DEPTH_M = 20.0

FACE_NAMES = ("+x", "-x", "+y", "-y", "+z", "-z")


def vec3(x: float, y: float, z: float) -> np.ndarray:
    """A room-frame point/vector as a float64 array of shape (3,)."""
    v = np.array([x, y, z], dtype=np.float64)
    if not np.all(np.isfinite(v)):
        raise GeometryError(f"non-finite vector {v}")
    return v


def _as_vec3(v) -> np.ndarray:
    v = np.asarray(v, dtype=np.float64).reshape(3)
    if not np.all(np.isfinite(v)):
        raise GeometryError(f"non-finite vector {v}")
    return v


@dataclass(frozen=True)
class PinholeModel:
    """Pinhole intrinsics plus a rigid device-to-room pose."""

    name: str
    fx: float
    fy: float
    cx: float
    cy: float
    width: int
    height: int
    rotation: np.ndarray  # (3, 3), device frame -> room frame
    translation: np.ndarray  # (3,), meters

    def __post_init__(self):
        if self.fx <= 0 or self.fy <= 0:
            raise GeometryError(f"{self.name}: focal lengths must be positive")
        if not (0 <= self.cx < self.width and 0 <= self.cy < self.height):
            raise GeometryError(f"{self.name}: principal point outside image")
        R = np.asarray(self.rotation, dtype=np.float64).reshape(3, 3)
        t = _as_vec3(self.translation)
        if np.max(np.abs(R @ R.T - np.eye(3))) > 1e-6:
            raise GeometryError(f"{self.name}: rotation is not orthonormal")
        R.setflags(write=False)
        t.setflags(write=False)
        object.__setattr__(self, "rotation", R)
        object.__setattr__(self, "translation", t)

    def pixel_rays(self) -> np.ndarray:
        """Room-frame unit ray directions for every pixel, shape (H, W, 3)."""
        i = np.arange(self.width, dtype=np.float64)
        j = np.arange(self.height, dtype=np.float64)
        xs = (i[None, :] - self.cx) / self.fx
        ys = (j[:, None] - self.cy) / self.fy
        d = np.empty((self.height, self.width, 3))
        d[..., 0] = xs
        d[..., 1] = ys
        d[..., 2] = 1.0
        d = d @ self.rotation.T
        d /= np.linalg.norm(d, axis=-1, keepdims=True)
        return d

    def backproject(self, depth: np.ndarray) -> np.ndarray:
        """Room-frame points from a z-depth grid (meters along the optical axis)."""
        h, w = depth.shape
        i = np.arange(w, dtype=np.float64)
        j = np.arange(h, dtype=np.float64)
        x = (i[None, :] - self.cx) / self.fx * depth
        y = (j[:, None] - self.cy) / self.fy * depth
        pts = np.stack([x, y, depth], axis=-1)
        return pts @ self.rotation.T + self.translation


@dataclass
class CameraRig:
    """The calibrated room: depth cameras plus projectors."""

    cameras: list[PinholeModel]
    projectors: list[PinholeModel]

    def __post_init__(self):
        if not self.cameras or not self.projectors:
            raise GeometryError("rig needs at least one camera and one projector")
        names = [m.name for m in self.cameras] + [m.name for m in self.projectors]
        if len(set(names)) != len(names):
            raise GeometryError("rig device names must be unique")

    def camera(self, name: str) -> PinholeModel:
        for c in self.cameras:
            if c.name == name:
                return c
        raise GeometryError(f"unknown camera {name!r}")

    def projector(self, name: str) -> PinholeModel:
        for p in self.projectors:
            if p.name == name:
                return p
        raise GeometryError(f"unknown projector {name!r}")


@dataclass
class DepthFrame:
    """One camera's captured depth (z-depth meters, 0 = invalid) and color."""

    camera_name: str
    depth: np.ndarray  # (H, W) float
    color: np.ndarray | None = None  # (H, W, 3) uint8

    def __post_init__(self):
        self.depth = np.asarray(self.depth, dtype=np.float64)
        if self.depth.ndim != 2:
            raise GeometryError("depth must be a 2-D grid")
        if np.any(self.depth < 0) or np.any(self.depth > MAX_DEPTH_M):
            raise GeometryError(f"depth values must lie in [0, {MAX_DEPTH_M}] m")
        if self.color is not None:
            self.color = np.asarray(self.color, dtype=np.uint8)
            if self.color.shape[:2] != self.depth.shape:
                raise GeometryError("color and depth dimensions differ")


@dataclass
class TriMesh:
    """Indexed triangle soup in the room frame."""

    vertices: np.ndarray  # (N, 3) float64
    triangles: np.ndarray  # (M, 3) int32
    colors: np.ndarray | None = None  # (N, 3) uint8, per vertex

    def __post_init__(self):
        self.vertices = np.ascontiguousarray(self.vertices, dtype=np.float64)
        self.triangles = np.ascontiguousarray(self.triangles, dtype=np.int32)
        if self.triangles.size and self.triangles.max() >= len(self.vertices):
            raise GeometryError("triangle index out of range")

    @property
    def n_triangles(self) -> int:
        return len(self.triangles)

    def bounds(self) -> tuple[np.ndarray, np.ndarray]:
        if not len(self.vertices):
            raise GeometryError("empty mesh has no bounds")
        return self.vertices.min(axis=0), self.vertices.max(axis=0)


@dataclass
class CubeDepthMap:
    """Six face_res x face_res grids of radial depth (meters) around a center.

    Face order follows :data:`FACE_NAMES`. Face pixel (i, j) of face k maps to
    the unnormalized direction with the face's dominant component set to +-1
    and the remaining two components (in axis order) set to
    s = 2*(i + 0.5)/R - 1 and t = 2*(j + 0.5)/R - 1.
    """

    faces: np.ndarray  # (6, R, R) float64, radial meters, 0 = no hit
    center: np.ndarray  # (3,)

    def __post_init__(self):
        self.faces = np.asarray(self.faces, dtype=np.float64)
        if self.faces.ndim != 3 or self.faces.shape[0] != 6 or (
            self.faces.shape[1] != self.faces.shape[2]
        ):
            raise GeometryError("cube map must be (6, R, R)")
        if np.any(self.faces < 0):
            raise GeometryError("cube depths must be >= 0")
        self.center = _as_vec3(self.center)

    @property
    def face_res(self) -> int:
        return self.faces.shape[1]


@dataclass
class CylindricalDepthImage:
    """Full equirectangular radial-depth panorama (0 = removed or no hit)."""

    depth: np.ndarray  # (H, W) float64, row 0 at elevation -pi/2 (down)
    center: np.ndarray  # (3,)

    def __post_init__(self):
        self.depth = np.asarray(self.depth, dtype=np.float64)
        if self.depth.ndim != 2 or self.depth.shape[1] != 2 * self.depth.shape[0]:
            raise GeometryError("equirectangular depth must be H x 2H")
        if np.any(self.depth < 0):
            raise GeometryError("depths must be >= 0")
        self.center = _as_vec3(self.center)

    @property
    def width(self) -> int:
        return self.depth.shape[1]

    @property
    def height(self) -> int:
        return self.depth.shape[0]

    def copy(self) -> "CylindricalDepthImage":
        return CylindricalDepthImage(self.depth.copy(), self.center.copy())


@dataclass
class PanoramaImage:
    """Full equirectangular RGB panorama, same pixel convention as depth."""

    pixels: np.ndarray  # (H, W, 3) uint8, row 0 at elevation -pi/2

    def __post_init__(self):
        self.pixels = np.asarray(self.pixels, dtype=np.uint8)
        if self.pixels.ndim != 3 or self.pixels.shape[2] != 3:
            raise GeometryError("panorama must be (H, W, 3) RGB")
        if self.pixels.shape[1] != 2 * self.pixels.shape[0]:
            raise GeometryError("panorama must be H x 2H")

    @property
    def width(self) -> int:
        return self.pixels.shape[1]

    @property
    def height(self) -> int:
        return self.pixels.shape[0]


@dataclass
class ProjectorFrame:
    """The RGB image one projector should display."""

    projector_name: str
    pixels: np.ndarray  # (H, W, 3) uint8

    def __post_init__(self):
        self.pixels = np.asarray(self.pixels, dtype=np.uint8)


@dataclass
class RoomBox:
    """Axis-aligned room model used for wall identification."""

    half_x: float
    half_y: float
    height: float
    wall_tolerance: float = 0.05

    def __post_init__(self):
        if min(self.half_x, self.half_y, self.height, self.wall_tolerance) <= 0:
            raise GeometryError("room extents and tolerance must be positive")

    def contains(self, p: np.ndarray) -> bool:
        p = _as_vec3(p)
        return bool(
            -self.half_x < p[0] < self.half_x
            and -self.half_y < p[1] < self.half_y
            and 0.0 < p[2] < self.height
        )
