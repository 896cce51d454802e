import numpy as np
import pytest

from storycaster.calibration import load_rig, save_rig
from storycaster.config import assets_root
from storycaster.errors import CalibrationError
from storycaster.geometry import RoomBox, default_box_rig


def test_round_trip_preserves_models(tmp_path):
    rig = default_box_rig(RoomBox(2.0, 2.0, 3.0))
    path = tmp_path / "room.rig"
    save_rig(rig, path)
    back = load_rig(path)
    assert [c.name for c in back.cameras] == [c.name for c in rig.cameras]
    assert [p.name for p in back.projectors] == [p.name for p in rig.projectors]
    for a, b in zip(rig.cameras + rig.projectors, back.cameras + back.projectors):
        assert np.allclose(a.rotation, b.rotation, atol=1e-10)
        assert np.allclose(a.translation, b.translation, atol=1e-10)
        assert (a.fx, a.fy, a.cx, a.cy, a.width, a.height) == pytest.approx(
            (b.fx, b.fy, b.cx, b.cy, b.width, b.height)
        )


def test_bundled_rig_loads():
    rig = load_rig(assets_root() / "rigs" / "demo_room.rig")
    assert len(rig.cameras) == 4
    assert len(rig.projectors) == 6


def test_missing_field_reported(tmp_path):
    path = tmp_path / "bad.rig"
    path.write_text("[camera c0]\nfx = 100\n")
    with pytest.raises(CalibrationError, match="missing fields"):
        load_rig(path)


def test_bad_rotation_reported(tmp_path):
    path = tmp_path / "bad.rig"
    path.write_text(
        "[camera c0]\nfx = 100\nfy = 100\ncx = 10\ncy = 10\nwidth = 20\nheight = 20\n"
        "rotation = 1 0 0  0 1 0  0 0 2\ntranslation = 0 0 0\n"
        "[projector p0]\nfx = 100\nfy = 100\ncx = 10\ncy = 10\nwidth = 20\nheight = 20\n"
        "rotation = 1 0 0  0 1 0  0 0 1\ntranslation = 0 0 0\n"
    )
    with pytest.raises(CalibrationError, match="orthonormal"):
        load_rig(path)


def test_unparseable_line_reported(tmp_path):
    path = tmp_path / "bad.rig"
    path.write_text("[camera c0]\nwhat even is this\n")
    with pytest.raises(CalibrationError, match="line 2"):
        load_rig(path)


def test_missing_file_reported():
    with pytest.raises(CalibrationError, match="not found"):
        load_rig("/nonexistent/nowhere.rig")
