"""The tool service: room, backends, sessions, jobs behind a JSON-RPC surface.

Transport-independent: stdio and WebSocket frontends both feed frames to
``handle_frame`` and deliver queued session events to their subscribers.
Session effects stay serialized per session (the runtime locks); independent
tool calls run concurrently through the job pool.
"""

from __future__ import annotations

import base64
import logging
import threading
from typing import Any, Callable

import numpy as np

from ..artifacts import ArtifactStore
from ..audio import AudioSource, PlaybackRegistry
from ..backends import (
    AmbientAudioRequest,
    BackendHub,
    ImageGenRequest,
    ScriptedTranscriber,
)
from ..backends.remote import _decode_wav
from ..config import Config
from ..errors import StorycasterError
from ..geometry import PanoramaImage
from ..imageio import (
    depth_grid_to_png_bytes,
    mask_from_png_bytes,
    mask_png_bytes,
    rgb_from_png_bytes,
    rgb_png_bytes,
)
from ..objects import load_masks
from ..room import RoomModel
from ..runtime import SessionRuntime
from ..audio.wavio import wav_bytes
from ..textutil import stable_hash64
from . import jsonrpc
from .jobs import JobManager
from .tools import Param, ToolDescriptor, ToolRegistry

log = logging.getLogger(__name__)


class ToolService:
    def __init__(
        self,
        config: Config,
        hub: BackendHub | None = None,
        room: RoomModel | None = None,
        artifacts_dir: str | None = None,
    ):
        self.config = config
        self.room = room or RoomModel(config)
        self.hub = hub or BackendHub()
        self.masks = load_masks(config.path(config.mask_dir), config.panorama_size)
        self.artifacts = ArtifactStore(artifacts_dir or config.path(config.artifacts_dir))
        self.registry = PlaybackRegistry(np.asarray(config.listener, dtype=np.float64))
        self.jobs = JobManager()
        self.sessions: dict[str, SessionRuntime] = {}
        self._session_counter = 0
        self._lock = threading.Lock()
        self._subscribers: list[Callable[[str, dict], None]] = []
        self.last_panorama: PanoramaImage | None = None
        self.tools = ToolRegistry()
        self._register_tools()

    # -- event fan-out -----------------------------------------------------

    def subscribe(self, callback: Callable[[str, dict], None]) -> Callable[[], None]:
        """callback(session_id, event); returns an unsubscribe function."""
        self._subscribers.append(callback)

        def cancel():
            if callback in self._subscribers:
                self._subscribers.remove(callback)

        return cancel

    def _fan_out(self, session_id: str):
        def relay(event: dict):
            for cb in list(self._subscribers):
                cb(session_id, event)

        return relay

    # -- tool handlers -----------------------------------------------------

    def _image_request(self, prompt: str, seed: int, outdoor: bool, size=None) -> ImageGenRequest:
        depth = self.room.depth_for(outdoor)
        return ImageGenRequest(
            prompt=prompt,
            depth=depth,
            control_strength=self.config.scene_control_strength,
            control_mask=self.room.guidance_mask(outdoor),
            seed=seed,
            output_size=tuple(size) if size else self.config.panorama_size,
            inpaint_mask=np.ones_like(depth.depth, dtype=bool),
        )

    def _tool_image_generate(self, prompt, seed=None, outdoor=False, width=None, height=None):
        seed = self.config.seed if seed is None else seed
        size = (width, height) if width and height else None

        def work():
            pano = self.hub.generate_image(self._image_request(prompt, seed, outdoor, size))
            self.last_panorama = pano
            png = rgb_png_bytes(pano.pixels)
            return {
                "image_png": base64.b64encode(png).decode("ascii"),
                "url": self.artifacts.put(png, ".png"),
                "width": pano.width,
                "height": pano.height,
            }

        return {"job_id": self.jobs.submit(work)}

    def _tool_image_inpaint(self, prompt, object=None, mask_png=None, base_png=None,
                            strength=None, seed=None):
        if object is None and mask_png is None:
            raise StorycasterError("inpaint needs an object name or a mask_png")
        strength = self.config.inpaint_control_strength if strength is None else strength
        seed = self.config.seed if seed is None else seed

        def work():
            if base_png is not None:
                base = PanoramaImage(rgb_from_png_bytes(base64.b64decode(base_png)))
            elif self.last_panorama is not None:
                base = self.last_panorama
            else:
                raise StorycasterError("no panorama to edit; generate one first")
            mask = (
                self.masks.get(object)
                if object is not None
                else mask_from_png_bytes(base64.b64decode(mask_png))
            )
            depth = self.room.depth_full
            req = ImageGenRequest(
                prompt=prompt,
                depth=depth,
                control_strength=strength,
                control_mask=self.room.guidance_mask(False),
                seed=seed,
                output_size=(base.width, base.height),
                inpaint_mask=mask,
            )
            out = self.hub.inpaint_image(base, req)
            self.last_panorama = out
            png = rgb_png_bytes(out.pixels)
            return {
                "image_png": base64.b64encode(png).decode("ascii"),
                "url": self.artifacts.put(png, ".png"),
            }

        return {"job_id": self.jobs.submit(work)}

    def _tool_image_upscale(self, image_png, factor):
        def work():
            img = PanoramaImage(rgb_from_png_bytes(base64.b64decode(image_png)))
            out = self.hub.upscale(img, factor)
            png = rgb_png_bytes(out.pixels)
            return {
                "image_png": base64.b64encode(png).decode("ascii"),
                "url": self.artifacts.put(png, ".png"),
                "width": out.width,
                "height": out.height,
            }

        return {"job_id": self.jobs.submit(work)}

    def _tool_audio_ambient(self, prompt, duration_s, seed=None):
        seed = self.config.seed if seed is None else seed

        def work():
            buf = self.hub.generate_ambient(AmbientAudioRequest(prompt, duration_s, seed))
            wav = wav_bytes(buf)
            return {
                "wav": base64.b64encode(wav).decode("ascii"),
                "url": self.artifacts.put(wav, ".wav"),
                "frames": int(buf.shape[0]),
            }

        return {"job_id": self.jobs.submit(work)}

    def _tool_playback_add(self, name, wav=None, url=None, position=None, volume=1.0, loop=False):
        if wav is None and url is None:
            raise StorycasterError("playback.add needs wav (base64) or an artifact url")
        data = base64.b64decode(wav) if wav is not None else self.artifacts.path_for(url).read_bytes()
        frames = _decode_wav(data, 48_000, 2)
        pos = np.asarray(position if position is not None else self.config.listener, dtype=np.float64)
        self.registry.add(AudioSource(name, frames, pos, volume=volume, loop=loop))
        return {"ok": True, "sources": self.registry.names()}

    def _tool_playback_replay(self, name):
        self.registry.replay(name)
        return {"ok": True}

    def _tool_playback_remove(self, name):
        self.registry.remove(name)
        return {"ok": True, "sources": self.registry.names()}

    def _tool_depth_snapshot(self, outdoor=False):
        depth = self.room.depth_for(bool(outdoor))
        png = depth_grid_to_png_bytes(depth.depth)
        return {
            "depth_png": base64.b64encode(png).decode("ascii"),
            "width": depth.width,
            "height": depth.height,
            "center": [float(v) for v in depth.center],
            "url": self.artifacts.put(png, ".png"),
        }

    def _tool_room_objects(self):
        urls = {}
        for name in self.masks.names():
            urls[name] = self.artifacts.put(mask_png_bytes(self.masks.get(name)), ".png")
        return {"objects": self.masks.names(), "mask_urls": urls}

    def _tool_session_start(self, seed=None, script=None):
        with self._lock:
            self._session_counter += 1
            session_id = f"s{self._session_counter}"
        config = self.config
        if seed is not None:
            import dataclasses

            config = dataclasses.replace(self.config, seed=seed)
            config.base_dir = self.config.base_dir
        runtime = SessionRuntime(
            config, room=self.room, artifact_store=self.artifacts, session_id=session_id
        )
        runtime.on_event(self._fan_out(session_id))
        self.sessions[session_id] = runtime
        if script:
            runtime.run_script(ScriptedTranscriber(list(script)))
        else:
            runtime.start()
        return {"session_id": session_id, "state": runtime.state.name}

    def _session(self, session_id: str) -> SessionRuntime:
        runtime = self.sessions.get(session_id)
        if runtime is None:
            raise StorycasterError(f"unknown session {session_id!r}")
        return runtime

    def _tool_session_input(self, session_id, text):
        runtime = self._session(session_id)
        before = len(runtime.events)
        runtime.submit(text)
        return {
            "state": runtime.state.name,
            "act": runtime.state.act,
            "accepts_input": runtime.state.accepts_input,
            "events_emitted": len(runtime.events) - before,
        }

    def _tool_session_state(self, session_id):
        return self._session(session_id).view()

    def _tool_session_stream(self, session_id, after_seq=0):
        runtime = self._session(session_id)
        events, last_seq = runtime.snapshot_after(int(after_seq))
        return {"session_id": session_id, "events": events, "last_seq": last_seq}

    def _tool_job_status(self, job_id):
        return self.jobs.status(job_id)

    # -- registry -----------------------------------------------------

    def _register_tools(self):
        t = self.tools.register
        t(
            ToolDescriptor(
                "image.generate",
                "Generate a depth-conditioned equirectangular panorama; returns a job id.",
                [
                    Param("prompt", "string", required=True),
                    Param("seed", "integer"),
                    Param("outdoor", "boolean", description="remove walls from depth guidance"),
                    Param("width", "integer"),
                    Param("height", "integer"),
                ],
                example={"prompt": "sunlit forest, saturated bright colors", "outdoor": True},
            ),
            self._tool_image_generate,
        )
        t(
            ToolDescriptor(
                "image.inpaint",
                "Regenerate one masked region of a panorama; returns a job id.",
                [
                    Param("prompt", "string", required=True),
                    Param("object", "string", description="registry object whose mask to use"),
                    Param("mask_png", "string", description="base64 8-bit mask PNG"),
                    Param("base_png", "string", description="base64 RGB PNG to edit"),
                    Param("strength", "number"),
                    Param("seed", "integer"),
                ],
                example={"prompt": "a campfire", "object": "ottoman"},
            ),
            self._tool_image_inpaint,
        )
        t(
            ToolDescriptor(
                "image.upscale",
                "Upscale an image by 2x or 4x; returns a job id.",
                [
                    Param("image_png", "string", required=True),
                    Param("factor", "integer", required=True),
                ],
                example={"image_png": "<base64>", "factor": 4},
            ),
            self._tool_image_upscale,
        )
        t(
            ToolDescriptor(
                "audio.ambient",
                "Generate a loopable ambient soundscape; returns a job id.",
                [
                    Param("prompt", "string", required=True),
                    Param("duration_s", "number", required=True),
                    Param("seed", "integer"),
                ],
                example={"prompt": "medieval tavern atmosphere", "duration_s": 10.0},
            ),
            self._tool_audio_ambient,
        )
        t(
            ToolDescriptor(
                "audio.playback.add",
                "Register a named positioned audio source.",
                [
                    Param("name", "string", required=True),
                    Param("wav", "string", description="base64 WAV (48 kHz)"),
                    Param("url", "string", description="artifact url of a WAV"),
                    Param("position", "array"),
                    Param("volume", "number"),
                    Param("loop", "boolean"),
                ],
                example={"name": "ambient", "url": "artifacts/example.wav", "volume": 0.5},
            ),
            self._tool_playback_add,
        )
        t(
            ToolDescriptor(
                "audio.playback.replay",
                "Restart a registered source's clock.",
                [Param("name", "string", required=True)],
                example={"name": "ambient"},
            ),
            self._tool_playback_replay,
        )
        t(
            ToolDescriptor(
                "audio.playback.remove",
                "Remove and stop a registered source.",
                [Param("name", "string", required=True)],
                example={"name": "ambient"},
            ),
            self._tool_playback_remove,
        )
        t(
            ToolDescriptor(
                "room.depth_snapshot",
                "Current cylindrical room depth as 16-bit millimeter PNG.",
                [Param("outdoor", "boolean")],
                example={"outdoor": False},
            ),
            self._tool_depth_snapshot,
        )
        t(
            ToolDescriptor(
                "room.objects",
                "Editable objects in the mask registry with mask thumbnails.",
                [],
                example={},
            ),
            self._tool_room_objects,
        )
        t(
            ToolDescriptor(
                "session.start",
                "Start a story session; optionally drive it from a script.",
                [Param("seed", "integer"), Param("script", "array")],
                example={"seed": 7},
            ),
            self._tool_session_start,
        )
        t(
            ToolDescriptor(
                "session.input",
                "Submit one user utterance to a session.",
                [
                    Param("session_id", "string", required=True),
                    Param("text", "string", required=True),
                ],
                example={"session_id": "s1", "text": "a story about mars"},
            ),
            self._tool_session_input,
        )
        t(
            ToolDescriptor(
                "session.state",
                "Snapshot of a session's state and latest assets.",
                [Param("session_id", "string", required=True)],
                example={"session_id": "s1"},
            ),
            self._tool_session_state,
        )
        t(
            ToolDescriptor(
                "session.stream",
                "Replay buffered session events after a sequence number and subscribe.",
                [
                    Param("session_id", "string", required=True),
                    Param("after_seq", "integer"),
                ],
                streaming=True,
                example={"session_id": "s1", "after_seq": 0},
            ),
            self._tool_session_stream,
        )
        t(
            ToolDescriptor(
                "job.status",
                "Poll an async job: pending, done(result), or failed(error).",
                [Param("job_id", "string", required=True)],
                example={"job_id": "job-1"},
            ),
            self._tool_job_status,
        )

    # -- dispatch -----------------------------------------------------

    def call_tool(self, name: str, arguments: dict) -> Any:
        if name not in self.tools:
            raise KeyError(name)
        tool = self.tools.get(name)
        problem = tool.descriptor.validate(arguments)
        if problem is not None:
            raise ValueError(problem)
        return tool.handler(**arguments)

    def handle_frame(self, line: str) -> str | None:
        """One request frame in, one response frame (or None for notifications)."""
        decoded = jsonrpc.decode_frame(line)
        if isinstance(decoded, jsonrpc.ParsedError):
            return jsonrpc.error_frame(decoded.id, decoded.code, decoded.message)
        req = decoded
        try:
            result = self._dispatch(req.method, req.params)
        except KeyError:
            if req.is_notification:
                return None
            return jsonrpc.error_frame(
                req.id, jsonrpc.METHOD_NOT_FOUND, f"unknown method {req.method!r}"
            )
        except (ValueError, TypeError) as exc:
            if req.is_notification:
                return None
            return jsonrpc.error_frame(req.id, jsonrpc.INVALID_PARAMS, str(exc))
        except StorycasterError as exc:
            if req.is_notification:
                return None
            return jsonrpc.error_frame(req.id, exc.rpc_code, str(exc))
        except Exception as exc:  # pragma: no cover - defensive
            log.exception("internal error handling %s", req.method)
            if req.is_notification:
                return None
            return jsonrpc.error_frame(req.id, jsonrpc.INTERNAL_ERROR, str(exc))
        if req.is_notification:
            return None
        return jsonrpc.result_frame(req.id, result)

    def _dispatch(self, method: str, params: dict) -> Any:
        if method == "tools/list":
            return {"tools": self.tools.descriptors()}
        if method == "tools/call":
            name = params.get("name")
            if not isinstance(name, str):
                raise ValueError("tools/call needs a tool name")
            arguments = params.get("arguments", {})
            if not isinstance(arguments, dict):
                raise ValueError("tools/call arguments must be an object")
            return self.call_tool(name, arguments)
        # direct dispatch: method == tool name
        return self.call_tool(method, params)


def stream_call_target(decoded: jsonrpc.Request) -> tuple[str, int] | None:
    """(session_id, after_seq) when a frame is a session.stream call."""
    if decoded.method == "tools/call":
        name = decoded.params.get("name")
        args = decoded.params.get("arguments", {}) or {}
    else:
        name = decoded.method
        args = decoded.params
    if name != "session.stream" or not isinstance(args, dict):
        return None
    sid = args.get("session_id")
    if not isinstance(sid, str):
        return None
    try:
        after = int(args.get("after_seq", 0) or 0)
    except (TypeError, ValueError):
        after = 0
    return sid, after
