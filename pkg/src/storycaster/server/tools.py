"""Tool registry: descriptors, parameter validation, dispatch."""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Any, Callable

_TYPE_CHECKS = {
    "string": lambda v: isinstance(v, str),
    "integer": lambda v: isinstance(v, int) and not isinstance(v, bool),
    "number": lambda v: isinstance(v, (int, float)) and not isinstance(v, bool),
    "boolean": lambda v: isinstance(v, bool),
    "array": lambda v: isinstance(v, list),
    "object": lambda v: isinstance(v, dict),
}


@dataclass
class Param:
    name: str
    type: str
    required: bool = False
    description: str = ""

    def __post_init__(self):
        if self.type not in _TYPE_CHECKS:
            raise ValueError(f"unknown param type {self.type!r}")


@dataclass
class ToolDescriptor:
    name: str
    description: str
    params: list[Param]
    streaming: bool = False
    example: dict = field(default_factory=dict)

    def validate(self, arguments: dict) -> str | None:
        """None when valid, else a human-readable problem description."""
        known = {p.name: p for p in self.params}
        for p in self.params:
            if p.required and p.name not in arguments:
                return f"missing required parameter {p.name!r}"
        for key, value in arguments.items():
            if key not in known:
                return f"unexpected parameter {key!r}"
            if value is not None and not _TYPE_CHECKS[known[key].type](value):
                return f"parameter {key!r} must be {known[key].type}"
        return None

    def describe(self) -> dict:
        return {
            "name": self.name,
            "description": self.description,
            "streaming": self.streaming,
            "params": [
                {
                    "name": p.name,
                    "type": p.type,
                    "required": p.required,
                    "description": p.description,
                }
                for p in self.params
            ],
            "example": self.example,
        }


@dataclass
class Tool:
    descriptor: ToolDescriptor
    handler: Callable[..., Any]


class ToolRegistry:
    def __init__(self):
        self._tools: dict[str, Tool] = {}

    def register(self, descriptor: ToolDescriptor, handler: Callable[..., Any]) -> None:
        if descriptor.name in self._tools:
            raise ValueError(f"tool {descriptor.name!r} registered twice")
        self._tools[descriptor.name] = Tool(descriptor, handler)

    def __contains__(self, name: str) -> bool:
        return name in self._tools

    def get(self, name: str) -> Tool:
        return self._tools[name]

    def descriptors(self) -> list[dict]:
        return [t.descriptor.describe() for t in self._tools.values()]
