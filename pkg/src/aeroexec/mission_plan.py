"""Mission plan data model, parser, validator and execution cursor, plus
the load-once ParameterServer configuration store.

Plan document format (JSON):

    {
      "version": "1",
      "frame": "local_enu",
      "cruise_altitude": 10.0,
      "waypoints": [
        {"id": "wp0", "position": [x, y, z], "speed": 2.5,
         "tasks": [{"kind": "Science", "params": {"duration_s": 3, "label": "rock"}}]}
      ]
    }
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass, field
from enum import Enum
from typing import Any

from .vec import Vec3, dist

SUPPORTED_VERSIONS = {"1"}


class PlanError(Exception):
    pass


class PlanSyntaxError(PlanError):
    """Document is not parseable JSON."""


class SchemaError(PlanError):
    """Structurally invalid plan; `path` points at the offending field."""

    def __init__(self, path: str, message: str = ""):
        self.path = path
        super().__init__(f"{path}: {message}" if message else path)


class UnsupportedVersion(PlanError):
    pass


class InvalidCursor(PlanError):
    pass


class TaskKind(str, Enum):
    SCIENCE = "Science"
    LANDING_SITE_SEARCH = "LandingSiteSearch"


@dataclass(frozen=True)
class Task:
    kind: TaskKind
    params: dict = field(default_factory=dict)

    def to_dict(self) -> dict:
        return {"kind": self.kind.value, "params": dict(self.params)}


@dataclass(frozen=True)
class Waypoint:
    id: str
    position: Vec3
    speed: float | None = None
    tasks: tuple[Task, ...] = ()

    def to_dict(self) -> dict:
        doc: dict[str, Any] = {"id": self.id, "position": list(self.position)}
        if self.speed is not None:
            doc["speed"] = self.speed
        if self.tasks:
            doc["tasks"] = [t.to_dict() for t in self.tasks]
        return doc


@dataclass(frozen=True)
class MissionPlan:
    version: str
    frame: str
    cruise_altitude: float
    waypoints: tuple[Waypoint, ...]

    def total_length(self) -> float:
        return sum(
            dist(a.position, b.position)
            for a, b in zip(self.waypoints, self.waypoints[1:])
        )

    def to_dict(self) -> dict:
        return {
            "version": self.version,
            "frame": self.frame,
            "cruise_altitude": self.cruise_altitude,
            "waypoints": [w.to_dict() for w in self.waypoints],
        }

    def serialize(self) -> bytes:
        return json.dumps(self.to_dict(), separators=(",", ":")).encode()


# -- parsing ---------------------------------------------------------------


def parse_plan(document: bytes | str | dict) -> MissionPlan:
    if isinstance(document, dict):
        doc = document
    else:
        try:
            doc = json.loads(document)
        except json.JSONDecodeError as e:
            raise PlanSyntaxError(str(e)) from None
    if not isinstance(doc, dict):
        raise SchemaError("$", "plan must be a JSON object")

    version = doc.get("version")
    if version is None:
        raise SchemaError("version", "missing")
    if str(version) not in SUPPORTED_VERSIONS:
        raise UnsupportedVersion(str(version))

    frame = _require_str(doc, "frame")
    cruise = _require_number(doc, "cruise_altitude")
    raw_wps = doc.get("waypoints")
    if not isinstance(raw_wps, list) or not raw_wps:
        raise SchemaError("waypoints", "need at least one waypoint")

    waypoints = []
    seen_ids: set[str] = set()
    for i, raw in enumerate(raw_wps):
        path = f"waypoints[{i}]"
        if not isinstance(raw, dict):
            raise SchemaError(path, "waypoint must be an object")
        wp_id = raw.get("id")
        if not isinstance(wp_id, str) or not wp_id:
            raise SchemaError(f"{path}.id", "missing or empty")
        if wp_id in seen_ids:
            raise SchemaError(f"{path}.id", f"duplicate waypoint id {wp_id!r}")
        seen_ids.add(wp_id)
        position = _parse_position(raw.get("position"), f"{path}.position")
        speed = raw.get("speed")
        if speed is not None:
            if not isinstance(speed, (int, float)) or isinstance(speed, bool) or speed <= 0:
                raise SchemaError(f"{path}.speed", "must be a number > 0")
            speed = float(speed)
        tasks = tuple(
            _parse_task(t, f"{path}.tasks[{j}]")
            for j, t in enumerate(raw.get("tasks") or [])
        )
        waypoints.append(Waypoint(wp_id, position, speed, tasks))

    return MissionPlan(str(version), frame, float(cruise), tuple(waypoints))


def _parse_position(raw: Any, path: str) -> Vec3:
    if (
        not isinstance(raw, list)
        or len(raw) != 3
        or not all(isinstance(c, (int, float)) and not isinstance(c, bool) for c in raw)
    ):
        raise SchemaError(path, "must be [x, y, z] numbers")
    pos = (float(raw[0]), float(raw[1]), float(raw[2]))
    if not all(math.isfinite(c) for c in pos):
        raise SchemaError(path, "coordinates must be finite")
    return pos


_TASK_REQUIRED_PARAMS = {
    TaskKind.SCIENCE: ("duration_s", "label"),
    TaskKind.LANDING_SITE_SEARCH: ("extent_m", "min_confidence"),
}


def _parse_task(raw: Any, path: str) -> Task:
    if not isinstance(raw, dict):
        raise SchemaError(path, "task must be an object")
    kind_raw = raw.get("kind")
    try:
        kind = TaskKind(kind_raw)
    except ValueError:
        raise SchemaError(f"{path}.kind", f"unknown task kind {kind_raw!r}") from None
    params = raw.get("params") or {}
    if not isinstance(params, dict):
        raise SchemaError(f"{path}.params", "must be an object")
    for key in _TASK_REQUIRED_PARAMS[kind]:
        if key not in params:
            raise SchemaError(f"{path}.params.{key}", "missing")
    if kind is TaskKind.SCIENCE and not (
        isinstance(params["duration_s"], (int, float)) and params["duration_s"] > 0
    ):
        raise SchemaError(f"{path}.params.duration_s", "must be > 0")
    return Task(kind, dict(params))


def _require_str(doc: dict, key: str) -> str:
    val = doc.get(key)
    if not isinstance(val, str) or not val:
        raise SchemaError(key, "missing or not a string")
    return val


def _require_number(doc: dict, key: str) -> float:
    val = doc.get(key)
    if not isinstance(val, (int, float)) or isinstance(val, bool):
        raise SchemaError(key, "missing or not a number")
    return float(val)


# -- validation ----------------------------------------------------------------


@dataclass
class VehicleLimits:
    max_path_length_m: float = 1200.0
    max_speed: float = 3.0


@dataclass
class PlanReport:
    violations: list[str] = field(default_factory=list)
    codes: list[str] = field(default_factory=list)

    def add(self, code: str, message: str) -> None:
        self.codes.append(code)
        self.violations.append(message)

    @property
    def passed(self) -> bool:
        return not self.violations

    def as_text(self) -> str:
        if self.passed:
            return "verdict: PASS"
        return "verdict: FAIL\n" + "\n".join(f"- {v}" for v in self.violations)


def validate_plan(plan: MissionPlan, limits: VehicleLimits | None = None) -> PlanReport:
    limits = limits or VehicleLimits()
    report = PlanReport()
    total = plan.total_length()
    if total > limits.max_path_length_m:
        report.add("path_length", (
            f"total path length {total:.1f} m exceeds limit "
            f"{limits.max_path_length_m:.1f} m"))
    for i, (a, b) in enumerate(zip(plan.waypoints, plan.waypoints[1:])):
        if dist(a.position, b.position) == 0.0:
            report.add(f"zero_leg:{i}",
                       f"zero-length leg between waypoints[{i}] and waypoints[{i + 1}]")
    for i, wp in enumerate(plan.waypoints):
        if wp.speed is not None and wp.speed > limits.max_speed:
            report.add(f"speed:{i}", (
                f"waypoints[{i}].speed {wp.speed:.2f} exceeds limit "
                f"{limits.max_speed:.2f}"))
    return report


# -- execution cursor --------------------------------------------------------------

# A cursor is a plain integer index: a pure value that survives pause,
# resume and serialization untouched.
FRESH_CURSOR = 0


def cursor_next(plan: MissionPlan, cursor: int) -> tuple[Waypoint | None, int]:
    if not isinstance(cursor, int) or cursor < 0 or cursor > len(plan.waypoints):
        raise InvalidCursor(repr(cursor))
    if cursor >= len(plan.waypoints):
        return None, cursor
    return plan.waypoints[cursor], cursor + 1


# -- parameter server ------------------------------------------------------------------


class UnknownParameter(KeyError):
    pass


class ParameterServer:
    """Namespaced configuration, loaded once and read many times. Nested
    dicts flatten into dotted keys; reads of unknown keys raise."""

    def __init__(self, tree: dict | None = None):
        self._values: dict[str, Any] = {}
        if tree:
            self._flatten("", tree)

    def _flatten(self, prefix: str, node: dict) -> None:
        for key, value in node.items():
            full = f"{prefix}{key}"
            if isinstance(value, dict):
                self._flatten(full + ".", value)
            else:
                self._values[full] = value

    def get(self, key: str) -> Any:
        try:
            return self._values[key]
        except KeyError:
            raise UnknownParameter(key) from None

    def get_or(self, key: str, default: Any) -> Any:
        return self._values.get(key, default)

    def get_float(self, key: str) -> float:
        value = self.get(key)
        if isinstance(value, bool) or not isinstance(value, (int, float)):
            raise TypeError(f"parameter {key!r} is {type(value).__name__}, wanted number")
        return float(value)

    def has(self, key: str) -> bool:
        return key in self._values

    def view(self, prefix: str) -> "ParameterView":
        return ParameterView(self, prefix)

    def keys(self) -> list[str]:
        return sorted(self._values)


class ParameterView:
    """Read-only window onto one namespace of a ParameterServer."""

    def __init__(self, server: ParameterServer, prefix: str):
        self._server = server
        self._prefix = prefix.rstrip(".") + "."

    def get(self, key: str) -> Any:
        return self._server.get(self._prefix + key)

    def get_or(self, key: str, default: Any) -> Any:
        return self._server.get_or(self._prefix + key, default)

    def get_float(self, key: str) -> float:
        return self._server.get_float(self._prefix + key)
