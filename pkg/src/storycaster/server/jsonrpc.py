"""JSON-RPC 2.0 framing.

One message per line (stdio) or per text frame (WebSocket).  Requests
without an ``id`` key are notifications and never receive a response, even
on error; malformed frames produce -32700/-32600 errors without disturbing
the connection.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from typing import Any

PARSE_ERROR = -32700
INVALID_REQUEST = -32600
METHOD_NOT_FOUND = -32601
INVALID_PARAMS = -32602
INTERNAL_ERROR = -32603

_SENTINEL = object()


@dataclass
class Request:
    method: str
    params: dict
    id: Any = _SENTINEL  # distinguish absent (notification) from null

    @property
    def is_notification(self) -> bool:
        return self.id is _SENTINEL


@dataclass
class ParsedError:
    code: int
    message: str
    id: Any = None


def decode_frame(line: str) -> Request | ParsedError:
    try:
        data = json.loads(line)
    except json.JSONDecodeError as exc:
        return ParsedError(PARSE_ERROR, f"parse error: {exc.msg}")
    if not isinstance(data, dict):
        return ParsedError(INVALID_REQUEST, "request must be a JSON object")
    if data.get("jsonrpc") != "2.0":
        return ParsedError(INVALID_REQUEST, "jsonrpc must be '2.0'", data.get("id"))
    method = data.get("method")
    if not isinstance(method, str):
        return ParsedError(INVALID_REQUEST, "method must be a string", data.get("id"))
    params = data.get("params", {})
    if params is None:
        params = {}
    if not isinstance(params, dict):
        return ParsedError(INVALID_PARAMS, "params must be an object", data.get("id"))
    if "id" in data:
        return Request(method=method, params=params, id=data["id"])
    return Request(method=method, params=params)


def result_frame(req_id: Any, result: Any) -> str:
    return json.dumps({"jsonrpc": "2.0", "id": req_id, "result": result})


def error_frame(req_id: Any, code: int, message: str) -> str:
    return json.dumps(
        {"jsonrpc": "2.0", "id": req_id, "error": {"code": code, "message": message}}
    )


def notification_frame(method: str, params: dict) -> str:
    return json.dumps({"jsonrpc": "2.0", "method": method, "params": params})
