from .connector import AlreadyBound, Backend, ConnectorError, ConnectorSession, SimBackend
from .faults import BadSchedule, FaultInjection, FaultKind
from .mock import ScriptedBackend
from .plant import NotInitialized, PlantConfig, PlantError, SimVehicle
from .types import (
    CommandAck,
    CommandKind,
    VehicleCommand,
    VehicleMode,
    VehicleState,
)

__all__ = [
    "AlreadyBound",
    "Backend",
    "BadSchedule",
    "CommandAck",
    "CommandKind",
    "ConnectorError",
    "ConnectorSession",
    "FaultInjection",
    "FaultKind",
    "NotInitialized",
    "PlantConfig",
    "PlantError",
    "ScriptedBackend",
    "SimBackend",
    "SimVehicle",
    "VehicleCommand",
    "VehicleMode",
    "VehicleState",
]
