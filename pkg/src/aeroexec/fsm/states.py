"""Mission phase labels. The canonical set covers a full flight from idle
through terminate; custom transition tables may introduce further states."""

from enum import Enum


class MissionState(str, Enum):
    IDLE = "Idle"
    INIT = "Init"
    PRECHECKS = "PreChecks"
    TAKEOFF = "Takeoff"
    MISSION = "Mission"
    LAND = "Land"
    EMERGENCY_LAND = "EmergencyLand"
    TERMINATE = "Terminate"


ALL_STATES = [s.value for s in MissionState]

# Phase order of an uneventful flight where every tree runs to Success.
NOMINAL_SEQUENCE = [
    MissionState.IDLE.value,
    MissionState.INIT.value,
    MissionState.PRECHECKS.value,
    MissionState.TAKEOFF.value,
    MissionState.MISSION.value,
    MissionState.LAND.value,
    MissionState.TERMINATE.value,
]
