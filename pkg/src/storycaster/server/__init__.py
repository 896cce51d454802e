"""JSON-RPC tool server: service core plus stdio and WebSocket transports."""

from .jobs import JobManager
from .jsonrpc import (
    INTERNAL_ERROR,
    INVALID_PARAMS,
    INVALID_REQUEST,
    METHOD_NOT_FOUND,
    PARSE_ERROR,
    decode_frame,
    error_frame,
    notification_frame,
    result_frame,
)
from .service import ToolService, stream_call_target
from .stdio import serve_stdio
from .tools import Param, ToolDescriptor, ToolRegistry

__all__ = [
    "INTERNAL_ERROR",
    "INVALID_PARAMS",
    "INVALID_REQUEST",
    "JobManager",
    "METHOD_NOT_FOUND",
    "PARSE_ERROR",
    "Param",
    "ToolDescriptor",
    "ToolRegistry",
    "ToolService",
    "decode_frame",
    "error_frame",
    "notification_frame",
    "result_frame",
    "serve_stdio",
    "stream_call_target",
]
