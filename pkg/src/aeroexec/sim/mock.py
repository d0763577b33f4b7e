"""Scripted mock backend: proves the connector contract holds for more
than one implementation, and lets tests force specific command rejections
(e.g. an Arm that always fails) without touching the plant."""

from __future__ import annotations

from ..behaviors.geometry import LandingSite
from ..healthguard import HealthSample
from .connector import Backend, ConnectorSession
from .types import (
    REASON_AIRBORNE,
    REASON_MODE_NOT_OFFBOARD,
    REASON_NOT_ARMED,
    CommandAck,
    CommandKind,
    VehicleCommand,
    VehicleMode,
    VehicleState,
)


class _ScriptedSession(ConnectorSession):
    def __init__(self, reject: dict[CommandKind, str], airborne: bool = False):
        self._reject = reject
        self.commands: list[VehicleCommand] = []
        self.airborne = airborne
        self.mode = VehicleMode.OFFBOARD if airborne else VehicleMode.MANUAL
        self.armed = airborne
        self.detector_enabled = False
        self._t = 0.0

    def send_command(self, cmd: VehicleCommand) -> CommandAck:
        self.commands.append(cmd)
        if cmd.kind in self._reject:
            return CommandAck(False, self._reject[cmd.kind])
        if cmd.kind is CommandKind.SET_MODE:
            self.mode = cmd.mode or VehicleMode.MANUAL
            return CommandAck(True)
        if cmd.kind is CommandKind.ARM:
            if self.mode is not VehicleMode.OFFBOARD:
                return CommandAck(False, REASON_MODE_NOT_OFFBOARD)
            self.armed = True
            return CommandAck(True)
        if cmd.kind is CommandKind.DISARM:
            self.armed = False
            return CommandAck(True)
        if not self.armed:
            return CommandAck(False, REASON_NOT_ARMED)
        if self.mode is not VehicleMode.OFFBOARD:
            return CommandAck(False, REASON_MODE_NOT_OFFBOARD)
        return CommandAck(True)

    def vehicle_state(self) -> VehicleState:
        return VehicleState(
            position=(0.0, 0.0, 10.0) if self.airborne else (0.0, 0.0, 0.0),
            velocity=(0.0, 0.0, 0.0),
            armed=self.armed,
            mode=self.mode,
            battery_fraction=1.0,
            on_ground=not self.airborne,
            t=self._t,
        )

    def health_sample(self) -> HealthSample:
        return HealthSample(
            timestamp=self._t,
            battery_fraction=1.0,
            battery_voltage=25.2,
            estimator_confidence=1.0,
            actuators_ok=True,
            landing_sites_cached=0,
        )

    def landing_sites(self) -> list[LandingSite]:
        return []

    def set_detector(self, enabled: bool) -> None:
        self.detector_enabled = enabled

    def advance(self, dt: float) -> None:
        self._t += dt


class ScriptedBackend(Backend):
    """reject maps a command kind to the rejection reason it should get;
    airborne=True scripts a vehicle already armed and flying."""

    def __init__(self, reject: dict[CommandKind, str] | None = None,
                 airborne: bool = False):
        super().__init__()
        self.reject = dict(reject or {})
        self.airborne = airborne
        self.session: _ScriptedSession | None = None

    def _make_session(self) -> ConnectorSession:
        self.session = _ScriptedSession(self.reject, self.airborne)
        return self.session
