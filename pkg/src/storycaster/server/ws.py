"""WebSocket JSON-RPC transport plus plain-HTTP artifact serving.

Each text frame is one JSON-RPC message.  A connection that calls
``session.stream`` gets subsequent events for that session pushed as
``session.event`` notifications; reconnecting clients pass their last seen
sequence number and the replay in the call result fills the gap.

Non-WebSocket HTTP requests to ``/artifacts/<name>`` serve generated files
(panoramas, frames, audio) so a browser console can fetch previews from the
same port.
"""

from __future__ import annotations

import asyncio
import json
import logging
from http import HTTPStatus
from pathlib import Path

from websockets.asyncio.server import serve
from websockets.datastructures import Headers
from websockets.exceptions import ConnectionClosed
from websockets.http11 import Response

from . import jsonrpc
from .service import ToolService, stream_call_target

log = logging.getLogger(__name__)

_CONTENT_TYPES = {
    ".png": "image/png",
    ".wav": "audio/wav",
    ".json": "application/json",
    ".html": "text/html; charset=utf-8",
    ".js": "text/javascript; charset=utf-8",
    ".css": "text/css; charset=utf-8",
}


def _file_response(path: Path) -> Response:
    body = path.read_bytes()
    headers = Headers(
        {
            "Content-Type": _CONTENT_TYPES.get(path.suffix, "application/octet-stream"),
            "Content-Length": str(len(body)),
            "Access-Control-Allow-Origin": "*",
            "Cache-Control": "immutable, max-age=86400",
        }.items()
    )
    return Response(HTTPStatus.OK, "OK", headers, body)


def _not_found() -> Response:
    headers = Headers({"Content-Type": "text/plain"}.items())
    return Response(HTTPStatus.NOT_FOUND, "Not Found", headers, b"not found\n")


class WebSocketServer:
    def __init__(self, service: ToolService, host: str = "127.0.0.1", port: int = 8765,
                 static_dir: Path | None = None):
        self.service = service
        self.host = host
        self.port = port
        self.static_dir = static_dir
        self._server = None

    def _process_request(self, connection, request):
        path = request.path.split("?", 1)[0]
        if path.startswith("/artifacts/"):
            name = Path(path).name
            file_path = self.service.artifacts.root / name
            return _file_response(file_path) if file_path.is_file() else _not_found()
        if self.static_dir is not None and path != "/ws" and not request.headers.get("Upgrade"):
            rel = "index.html" if path in ("/", "") else path.lstrip("/")
            file_path = (self.static_dir / rel).resolve()
            if file_path.is_file() and self.static_dir.resolve() in file_path.parents:
                return _file_response(file_path)
            return _not_found()
        return None  # proceed with the WebSocket handshake

    async def _handler(self, connection):
        loop = asyncio.get_running_loop()
        subscriptions: dict[str, int] = {}  # session_id -> last pushed seq
        queue: asyncio.Queue = asyncio.Queue()

        def on_event(session_id: str, event: dict) -> None:
            loop.call_soon_threadsafe(queue.put_nowait, (session_id, event))

        cancel = self.service.subscribe(on_event)

        async def pump_events():
            while True:
                session_id, event = await queue.get()
                if session_id in subscriptions and event["seq"] > subscriptions[session_id]:
                    subscriptions[session_id] = event["seq"]
                    await connection.send(
                        jsonrpc.notification_frame(
                            "session.event", {"session_id": session_id, "event": event}
                        )
                    )

        pump = asyncio.create_task(pump_events())
        try:
            async for message in connection:
                if isinstance(message, bytes):
                    message = message.decode("utf-8", errors="replace")
                decoded = jsonrpc.decode_frame(message)
                target = (
                    stream_call_target(decoded)
                    if isinstance(decoded, jsonrpc.Request)
                    else None
                )
                if target is not None:
                    # handled inline on the loop: the replay snapshot and the
                    # subscription floor update must not interleave with the
                    # pump, or reconnects could drop or repeat events
                    response = self.service.handle_frame(message)
                    if response is not None:
                        floor = json.loads(response).get("result", {}).get("last_seq")
                        if isinstance(floor, int):
                            sid = target[0]
                            subscriptions[sid] = max(subscriptions.get(sid, 0), floor)
                else:
                    response = await loop.run_in_executor(
                        None, self.service.handle_frame, message
                    )
                if response is not None:
                    await connection.send(response)
        except ConnectionClosed:
            pass
        finally:
            pump.cancel()
            cancel()

    async def run(self) -> None:
        async with serve(
            self._handler, self.host, self.port, process_request=self._process_request
        ) as server:
            self._server = server
            log.info("listening on ws://%s:%d", self.host, self.port)
            await asyncio.get_running_loop().create_future()  # run forever

    async def start(self):
        """Start without blocking; returns the underlying server (tests)."""
        self._server = await serve(
            self._handler, self.host, self.port, process_request=self._process_request
        )
        return self._server
