"""Synthetic rigs and analytic box-room scans.

Everything here is closed-form: depth frames come from intersecting pixel
rays with the analytic room surfaces, never from the mesh pipeline, so these
generators double as independent references in tests.  The default rig
mirrors the physical room model: four ceiling depth cameras and six
projectors covering the walls and floor.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from ..errors import GeometryError
from .types import CameraRig, DepthFrame, PinholeModel, RoomBox, vec3

HIT_NONE = -1
HIT_FLOOR = 0
HIT_CEILING = 1
HIT_WALL = 2
HIT_OBSTACLE = 3

_KIND_COLORS = {
    HIT_FLOOR: (110, 84, 60),
    HIT_CEILING: (235, 235, 230),
    HIT_WALL: (200, 196, 188),
    HIT_OBSTACLE: (150, 60, 60),
}


@dataclass(frozen=True)
class BoxObstacle:
    """Axis-aligned furniture stand-in: center (room frame) and full size."""

    center: tuple[float, float, float]
    size: tuple[float, float, float]

    @property
    def lo(self) -> np.ndarray:
        return np.asarray(self.center) - np.asarray(self.size) / 2.0

    @property
    def hi(self) -> np.ndarray:
        return np.asarray(self.center) + np.asarray(self.size) / 2.0


def look_rotation(forward, world_up=(0.0, 0.0, 1.0)) -> np.ndarray:
    """Device-to-room rotation for a device looking along ``forward``.

    Device axes are +x right, +y down, +z forward; ``world_up`` resolves the
    roll so device-down projects onto the world down direction.
    """
    z = np.asarray(forward, dtype=np.float64)
    n = np.linalg.norm(z)
    if n < 1e-12:
        raise GeometryError("forward vector must be nonzero")
    z = z / n
    up = np.asarray(world_up, dtype=np.float64)
    if abs(float(np.dot(z, up)) / np.linalg.norm(up)) > 0.999:
        up = np.array([0.0, 1.0, 0.0])  # looking straight up/down: pick any roll
    down = -up
    x = np.cross(down, z)
    x /= np.linalg.norm(x)
    y = np.cross(z, x)
    return np.stack([x, y, z], axis=1)


def _pinhole(name, pos, aim, width, height, hfov_deg) -> PinholeModel:
    fx = width / (2.0 * np.tan(np.radians(hfov_deg) / 2.0))
    return PinholeModel(
        name=name,
        fx=fx,
        fy=fx,
        cx=(width - 1) / 2.0,
        cy=(height - 1) / 2.0,
        width=width,
        height=height,
        rotation=look_rotation(np.asarray(aim, dtype=np.float64) - np.asarray(pos)),
        translation=vec3(*pos),
    )


def default_box_rig(
    room: RoomBox,
    cam_width: int = 128,
    cam_height: int = 96,
    proj_width: int = 400,
    proj_height: int = 250,
) -> CameraRig:
    """Four corner-mounted ceiling cameras plus six projectors.

    Each camera looks across the room at the opposite lower corner, so every
    wall is seen by the two cameras diagonal to it and the floor by all four.
    Projectors: one per wall plus two covering the floor halves.
    """
    hx, hy, h = room.half_x, room.half_y, room.height
    inset = 0.25
    cam_z = h - 0.05
    cams = []
    corners = [(1, 1), (-1, 1), (-1, -1), (1, -1)]
    for k, (sx, sy) in enumerate(corners):
        pos = (sx * (hx - inset), sy * (hy - inset), cam_z)
        aim = (-sx * hx * 0.6, -sy * hy * 0.6, 0.0)
        cams.append(_pinhole(f"cam{k}", pos, aim, cam_width, cam_height, 110.0))

    projs = []
    walls = [
        ("proj_px", (hx, 0.0, h / 2)),
        ("proj_nx", (-hx, 0.0, h / 2)),
        ("proj_py", (0.0, hy, h / 2)),
        ("proj_ny", (0.0, -hy, h / 2)),
    ]
    for name, target in walls:
        t = np.asarray(target)
        pos = (-t[0] * 0.35, -t[1] * 0.35, h - 0.15)
        projs.append(_pinhole(name, pos, target, proj_width, proj_height, 95.0))
    projs.append(
        _pinhole("proj_floor_a", (hx * 0.4, 0.0, h - 0.1), (hx * 0.3, 0.0, 0.0), proj_width, proj_height, 80.0)
    )
    projs.append(
        _pinhole("proj_floor_b", (-hx * 0.4, 0.0, h - 0.1), (-hx * 0.3, 0.0, 0.0), proj_width, proj_height, 80.0)
    )
    return CameraRig(cameras=cams, projectors=projs)


def analytic_first_hit(
    origin: np.ndarray,
    dirs: np.ndarray,
    room: RoomBox,
    obstacles: tuple[BoxObstacle, ...] = (),
) -> tuple[np.ndarray, np.ndarray]:
    """First intersection of rays from inside the room with its surfaces.

    Returns (t, kind) where t is the ray parameter (meters for unit ``dirs``)
    and kind one of the HIT_* codes.  Rays that somehow miss everything get
    (inf, HIT_NONE); for an origin inside the closed box that cannot happen.
    """
    o = np.asarray(origin, dtype=np.float64).reshape(3)
    d = np.asarray(dirs, dtype=np.float64).reshape(-1, 3)
    n = len(d)
    best_t = np.full(n, np.inf)
    best_kind = np.full(n, HIT_NONE, dtype=np.int32)
    eps = 1e-9

    def consider(t, valid, kind):
        nonlocal best_t, best_kind
        better = valid & (t > eps) & (t < best_t)
        best_t = np.where(better, t, best_t)
        best_kind = np.where(better, kind, best_kind)

    hx, hy, h = room.half_x, room.half_y, room.height
    with np.errstate(divide="ignore", invalid="ignore"):
        for axis, value, kind in [
            (2, 0.0, HIT_FLOOR),
            (2, h, HIT_CEILING),
            (0, hx, HIT_WALL),
            (0, -hx, HIT_WALL),
            (1, hy, HIT_WALL),
            (1, -hy, HIT_WALL),
        ]:
            t = (value - o[axis]) / d[:, axis]
            p = o + t[:, None] * d
            if axis == 2:
                inside = (np.abs(p[:, 0]) <= hx + eps) & (np.abs(p[:, 1]) <= hy + eps)
            elif axis == 0:
                inside = (np.abs(p[:, 1]) <= hy + eps) & (p[:, 2] >= -eps) & (p[:, 2] <= h + eps)
            else:
                inside = (np.abs(p[:, 0]) <= hx + eps) & (p[:, 2] >= -eps) & (p[:, 2] <= h + eps)
            consider(t, inside & np.isfinite(t), kind)

        for box in obstacles:
            lo, hi = box.lo, box.hi
            t1 = (lo - o) / d
            t2 = (hi - o) / d
            tmin = np.minimum(t1, t2)
            tmax = np.maximum(t1, t2)
            # axes with zero direction: ray parallel to slab; inside test
            parallel = np.abs(d) < 1e-300
            inside_slab = (o >= lo) & (o <= hi)
            tmin = np.where(parallel, np.where(inside_slab, -np.inf, np.inf), tmin)
            tmax = np.where(parallel, np.where(inside_slab, np.inf, -np.inf), tmax)
            enter = tmin.max(axis=1)
            leave = tmax.min(axis=1)
            valid = (enter <= leave) & (leave > eps)
            consider(enter, valid, HIT_OBSTACLE)

    return best_t, best_kind


def scan_box_room(
    rig: CameraRig,
    room: RoomBox,
    obstacles: tuple[BoxObstacle, ...] = (),
    with_color: bool = True,
) -> list[DepthFrame]:
    """Analytic z-depth captures for every rig camera."""
    frames = []
    for cam in rig.cameras:
        i = np.arange(cam.width, dtype=np.float64)
        j = np.arange(cam.height, dtype=np.float64)
        dx = (i[None, :] - cam.cx) / cam.fx
        dy = (j[:, None] - cam.cy) / cam.fy
        d_cam = np.stack(
            [np.broadcast_to(dx, (cam.height, cam.width)),
             np.broadcast_to(dy, (cam.height, cam.width)),
             np.ones((cam.height, cam.width))],
            axis=-1,
        )
        d_room = d_cam.reshape(-1, 3) @ cam.rotation.T
        t, kind = analytic_first_hit(cam.translation, d_room, room, obstacles)
        depth = np.where(kind >= 0, t, 0.0).reshape(cam.height, cam.width)
        color = None
        if with_color:
            rgb = np.zeros((len(kind), 3), dtype=np.uint8)
            for code, c in _KIND_COLORS.items():
                rgb[kind == code] = c
            color = rgb.reshape(cam.height, cam.width, 3)
        frames.append(DepthFrame(cam.name, depth, color))
    return frames
