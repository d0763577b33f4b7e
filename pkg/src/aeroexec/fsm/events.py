"""Discrete triggers for state transitions.

Internal events carry the root status of the active behavior tree (or a
named task condition raised from inside a tree); external events come from
the health monitor or an operator. Priorities order the queue: the most
safety-critical event pending is always handled first, ties break FIFO.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from enum import Enum
from typing import Any


class EventSource(Enum):
    INTERNAL = "internal"
    EXTERNAL = "external"


# Internal event names.
BT_SUCCESS = "BtSuccess"
BT_FAILURE = "BtFailure"
START = "Start"

# External health-monitor event names.
STATE_ESTIMATOR_FAILURE = "StateEstimatorFailure"
BATTERY_LOW = "BatteryLow"
BATTERY_CRITICAL = "BatteryCritical"
EMERGENCY_BATTERY = "EmergencyBattery"
NO_LANDING_SITES = "NoLandingSitesFound"
LANDING_SITE_CHECKS = "LandingSiteChecks"

HEALTH_EVENTS = [
    STATE_ESTIMATOR_FAILURE,
    BATTERY_LOW,
    BATTERY_CRITICAL,
    EMERGENCY_BATTERY,
    NO_LANDING_SITES,
    LANDING_SITE_CHECKS,
]

# Fixed at configuration load; unknown names fall back to DEFAULT_PRIORITY.
DEFAULT_PRIORITIES: dict[str, int] = {
    EMERGENCY_BATTERY: 100,
    STATE_ESTIMATOR_FAILURE: 90,
    BATTERY_CRITICAL: 80,
    BT_FAILURE: 70,
    NO_LANDING_SITES: 60,
    LANDING_SITE_CHECKS: 60,
    BATTERY_LOW: 50,
    BT_SUCCESS: 40,
    START: 30,
}
DEFAULT_PRIORITY = 10


def resolve_priority(name: str, overrides: dict[str, int] | None = None) -> int:
    if overrides and name in overrides:
        return overrides[name]
    return DEFAULT_PRIORITIES.get(name, DEFAULT_PRIORITY)


@dataclass
class Event:
    name: str
    source: EventSource = EventSource.EXTERNAL
    priority: int = DEFAULT_PRIORITY
    payload: dict[str, Any] = field(default_factory=dict)
    t: float = 0.0          # sim time at enqueue
    wall_t: float = 0.0     # wall time at enqueue, for latency accounting
    # BT status events record the state whose tree produced them, so a
    # status that outlived its state is discarded instead of dispatched.
    origin_state: str | None = None

    @classmethod
    def internal(cls, name: str, origin_state: str | None = None, **payload) -> "Event":
        return cls(name, EventSource.INTERNAL, resolve_priority(name),
                   payload, origin_state=origin_state)

    @classmethod
    def external(cls, name: str, **payload) -> "Event":
        return cls(name, EventSource.EXTERNAL, resolve_priority(name), payload)
