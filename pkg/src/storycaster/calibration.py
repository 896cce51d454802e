"""Rig calibration files.

A rig file is a plain-text document of device blocks:

    [camera kinect0]
    fx = 320.0
    fy = 320.0
    cx = 63.5
    cy = 47.5
    width = 128
    height = 96
    rotation = 1 0 0  0 1 0  0 0 1
    translation = 1.75 1.75 2.95

``rotation`` is the 3x3 device-to-room matrix, row-major; ``translation`` is
in meters.  Blank lines and ``#`` comments are ignored.  Device order in the
file is preserved.
"""

from __future__ import annotations

from pathlib import Path

import numpy as np

from .errors import CalibrationError
from .geometry.types import CameraRig, PinholeModel

_REQUIRED = ("fx", "fy", "cx", "cy", "width", "height", "rotation", "translation")


def _parse_block(kind: str, name: str, fields: dict[str, str], lineno: int) -> PinholeModel:
    missing = [k for k in _REQUIRED if k not in fields]
    if missing:
        raise CalibrationError(f"{kind} {name!r}: missing fields {missing} (near line {lineno})")
    try:
        rot = np.array([float(x) for x in fields["rotation"].split()], dtype=np.float64)
        if rot.size != 9:
            raise ValueError("rotation needs 9 numbers")
        trans = np.array([float(x) for x in fields["translation"].split()], dtype=np.float64)
        if trans.size != 3:
            raise ValueError("translation needs 3 numbers")
        return PinholeModel(
            name=name,
            fx=float(fields["fx"]),
            fy=float(fields["fy"]),
            cx=float(fields["cx"]),
            cy=float(fields["cy"]),
            width=int(fields["width"]),
            height=int(fields["height"]),
            rotation=rot.reshape(3, 3),
            translation=trans,
        )
    except Exception as exc:  # ValueError here, GeometryError from PinholeModel
        raise CalibrationError(f"{kind} {name!r}: {exc}") from exc


def load_rig(path: str | Path) -> CameraRig:
    path = Path(path)
    if not path.exists():
        raise CalibrationError(f"rig file not found: {path}")
    cameras: list[PinholeModel] = []
    projectors: list[PinholeModel] = []
    kind = name = None
    fields: dict[str, str] = {}
    block_line = 0

    def flush():
        if kind is None:
            return
        model = _parse_block(kind, name, fields, block_line)
        (cameras if kind == "camera" else projectors).append(model)

    for lineno, raw in enumerate(path.read_text().splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if line.startswith("[") and line.endswith("]"):
            flush()
            parts = line[1:-1].split()
            if len(parts) != 2 or parts[0] not in ("camera", "projector"):
                raise CalibrationError(f"line {lineno}: bad device header {line!r}")
            kind, name = parts
            fields = {}
            block_line = lineno
        elif "=" in line:
            if kind is None:
                raise CalibrationError(f"line {lineno}: field outside a device block")
            key, value = (s.strip() for s in line.split("=", 1))
            fields[key] = value
        else:
            raise CalibrationError(f"line {lineno}: unparseable line {line!r}")
    flush()
    try:
        return CameraRig(cameras=cameras, projectors=projectors)
    except Exception as exc:
        raise CalibrationError(str(exc)) from exc


def _format_block(kind: str, m: PinholeModel) -> str:
    rot = "  ".join(" ".join(f"{v:.12g}" for v in row) for row in m.rotation)
    trans = " ".join(f"{v:.12g}" for v in m.translation)
    return (
        f"[{kind} {m.name}]\n"
        f"fx = {m.fx:.12g}\nfy = {m.fy:.12g}\ncx = {m.cx:.12g}\ncy = {m.cy:.12g}\n"
        f"width = {m.width}\nheight = {m.height}\n"
        f"rotation = {rot}\ntranslation = {trans}\n"
    )


def save_rig(rig: CameraRig, path: str | Path) -> None:
    blocks = ["# storycaster rig calibration\n"]
    blocks += [_format_block("camera", c) for c in rig.cameras]
    blocks += [_format_block("projector", p) for p in rig.projectors]
    Path(path).write_text("\n".join(blocks))
