"""Typed key-value store shared by the leaves of a tree.

The value set is deliberately closed (numbers, strings, booleans,
3-vectors, timestamps, and lists of registered record types) so snapshots
and wire formats stay bit-exact. Reads of absent keys raise instead of
returning a default; a silent None here once meant an unarmed motor.
"""

from __future__ import annotations

from typing import Any

from .errors import BlackboardKeyError, BlackboardTypeError

# Record classes allowed inside list values (e.g. landing sites). Extended
# at import time by the modules that own those records.
_LIST_ITEM_TYPES: set[type] = set()


def register_blackboard_type(cls: type) -> None:
    _LIST_ITEM_TYPES.add(cls)


def _is_vector3(value: Any) -> bool:
    return (
        isinstance(value, tuple)
        and len(value) == 3
        and all(isinstance(c, (int, float)) and not isinstance(c, bool) for c in value)
    )


def _check_value(key: str, value: Any) -> None:
    if isinstance(value, (bool, int, float, str)):
        return
    if _is_vector3(value):
        return
    if isinstance(value, list):
        if all(type(item) in _LIST_ITEM_TYPES for item in value):
            return
        raise BlackboardTypeError(
            f"list value for {key!r} contains unregistered item types"
        )
    raise BlackboardTypeError(
        f"value of type {type(value).__name__} not allowed on blackboard (key {key!r})"
    )


class Blackboard:
    def __init__(self) -> None:
        self._entries: dict[str, Any] = {}

    def set(self, key: str, value: Any) -> None:
        _check_value(key, value)
        self._entries[key] = value

    def get(self, key: str) -> Any:
        try:
            return self._entries[key]
        except KeyError:
            raise BlackboardKeyError(key) from None

    def get_or(self, key: str, default: Any) -> Any:
        return self._entries.get(key, default)

    def has(self, key: str) -> bool:
        return key in self._entries

    def delete(self, key: str) -> None:
        self._entries.pop(key, None)

    def keys(self) -> list[str]:
        return list(self._entries)

    def snapshot(self) -> dict[str, Any]:
        """Shallow copy taken at a tick boundary; list values are copied so
        concurrent readers never see in-place mutation."""
        out: dict[str, Any] = {}
        for k, v in self._entries.items():
            out[k] = list(v) if isinstance(v, list) else v
        return out
