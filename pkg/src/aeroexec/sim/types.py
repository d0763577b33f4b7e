"""Vehicle command and state types shared across connector backends."""

from __future__ import annotations

from dataclasses import dataclass, field
from enum import Enum

from ..vec import Vec3


class VehicleMode(str, Enum):
    MANUAL = "manual"
    OFFBOARD = "offboard"


class CommandKind(str, Enum):
    SET_MODE = "SetMode"
    ARM = "Arm"
    DISARM = "Disarm"
    POSITION_SETPOINT = "PositionSetpoint"
    VELOCITY_SETPOINT = "VelocitySetpoint"
    HOLD = "Hold"


# Rejection reason codes.
REASON_MODE_NOT_OFFBOARD = "ModeNotOffboard"
REASON_NOT_ARMED = "NotArmed"
REASON_AIRBORNE = "Airborne"
REASON_NOT_ON_GROUND = "NotOnGround"
REASON_NON_FINITE = "NonFinite"


@dataclass(frozen=True)
class VehicleCommand:
    kind: CommandKind
    mode: VehicleMode | None = None
    setpoint: Vec3 | None = None
    yaw: float = 0.0
    speed: float | None = None
    force: bool = False

    @classmethod
    def set_mode(cls, mode: VehicleMode) -> "VehicleCommand":
        return cls(CommandKind.SET_MODE, mode=mode)

    @classmethod
    def arm(cls) -> "VehicleCommand":
        return cls(CommandKind.ARM)

    @classmethod
    def disarm(cls, force: bool = False) -> "VehicleCommand":
        return cls(CommandKind.DISARM, force=force)

    @classmethod
    def position(cls, target: Vec3, yaw: float = 0.0, speed: float | None = None) -> "VehicleCommand":
        return cls(CommandKind.POSITION_SETPOINT, setpoint=target, yaw=yaw, speed=speed)

    @classmethod
    def velocity(cls, vel: Vec3) -> "VehicleCommand":
        return cls(CommandKind.VELOCITY_SETPOINT, setpoint=vel)

    @classmethod
    def hold(cls) -> "VehicleCommand":
        return cls(CommandKind.HOLD)


@dataclass(frozen=True)
class CommandAck:
    accepted: bool
    reason: str = ""


@dataclass(frozen=True)
class VehicleState:
    position: Vec3
    velocity: Vec3
    armed: bool
    mode: VehicleMode
    battery_fraction: float
    on_ground: bool
    t: float = 0.0
