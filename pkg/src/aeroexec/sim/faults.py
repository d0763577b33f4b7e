"""Fault injection schedule entries for the simulated vehicle."""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum


class FaultKind(str, Enum):
    ESTIMATOR_DROPOUT = "estimator_dropout"
    BATTERY_DRAIN_MULTIPLIER = "battery_drain_multiplier"
    ACTUATOR_STUCK = "actuator_stuck"
    DETECTOR_BLIND = "detector_blind"


class BadSchedule(Exception):
    pass


@dataclass(frozen=True)
class FaultInjection:
    kind: FaultKind
    start: float
    duration: float | None = None  # None: permanent
    factor: float = 1.0            # battery drain multiplier only

    def active_at(self, t: float) -> bool:
        if t < self.start:
            return False
        if self.duration is None:
            return True
        return t < self.start + self.duration

    @classmethod
    def from_dict(cls, doc: dict) -> "FaultInjection":
        kind = FaultKind(doc["kind"])
        fault = cls(
            kind=kind,
            start=float(doc["start"]),
            duration=None if doc.get("duration") is None else float(doc["duration"]),
            factor=float(doc.get("factor", 1.0)),
        )
        if kind is FaultKind.BATTERY_DRAIN_MULTIPLIER and fault.factor <= 1.0:
            raise BadSchedule(f"drain multiplier must be > 1, got {fault.factor}")
        return fault

    def to_dict(self) -> dict:
        doc: dict = {"kind": self.kind.value, "start": self.start}
        if self.duration is not None:
            doc["duration"] = self.duration
        if self.kind is FaultKind.BATTERY_DRAIN_MULTIPLIER:
            doc["factor"] = self.factor
        return doc
