"""Line-delimited JSON-RPC over stdio.

One request per line on stdin, one response per line on stdout.  Session
events stream as ``session.event`` notifications once a client has called
``session.stream`` for that session; notifications may interleave ahead of
the triggering call's response (writes are serialized per line).
"""

from __future__ import annotations

import json
import sys
import threading

from . import jsonrpc
from .service import ToolService, stream_call_target


def serve_stdio(service: ToolService, stdin=None, stdout=None) -> None:
    stdin = stdin or sys.stdin
    stdout = stdout or sys.stdout
    write_lock = threading.Lock()
    subscriptions: dict[str, int] = {}

    def write_line(line: str) -> None:
        with write_lock:
            stdout.write(line + "\n")
            stdout.flush()

    def on_event(session_id: str, event: dict) -> None:
        floor = subscriptions.get(session_id)
        if floor is None or event["seq"] <= floor:
            return
        subscriptions[session_id] = event["seq"]
        write_line(
            jsonrpc.notification_frame(
                "session.event", {"session_id": session_id, "event": event}
            )
        )

    cancel = service.subscribe(on_event)
    try:
        for raw in stdin:
            line = raw.strip()
            if not line:
                continue
            response = service.handle_frame(line)
            decoded = jsonrpc.decode_frame(line)
            if isinstance(decoded, jsonrpc.Request) and response is not None:
                target = stream_call_target(decoded)
                if target is not None:
                    floor = json.loads(response).get("result", {}).get("last_seq")
                    if isinstance(floor, int):
                        sid = target[0]
                        subscriptions[sid] = max(subscriptions.get(sid, 0), floor)
            if response is not None:
                write_line(response)
    finally:
        cancel()
