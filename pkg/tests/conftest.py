import numpy as np
import pytest

from storycaster.backends import mock_hub
from storycaster.config import Config, assets_root
from storycaster.geometry import (
    RoomBox,
    default_box_rig,
    fuse_depth_frames,
    scan_box_room,
    vec3,
)
from storycaster.story import PromptAssets

ROOM = RoomBox(2.0, 2.0, 3.0)
CENTER = vec3(0.0, 0.0, 1.5)


@pytest.fixture(scope="session")
def room_box():
    return ROOM


@pytest.fixture(scope="session")
def box_rig():
    return default_box_rig(ROOM, cam_width=96, cam_height=72)


@pytest.fixture(scope="session")
def box_mesh(box_rig):
    return fuse_depth_frames(box_rig, scan_box_room(box_rig, ROOM))


@pytest.fixture(scope="session")
def center():
    return CENTER


@pytest.fixture()
def hub():
    return mock_hub()


@pytest.fixture(scope="session")
def prompts():
    return PromptAssets.load(assets_root() / "prompts", assets_root() / "scripts")


@pytest.fixture(scope="session")
def small_config():
    return Config.load(assets_root() / "configs" / "small.json")


@pytest.fixture(scope="session")
def shared_room(small_config):
    from storycaster.room import RoomModel

    return RoomModel(small_config)
