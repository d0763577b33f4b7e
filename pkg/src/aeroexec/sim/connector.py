"""Connector: the abstraction boundary between the autonomy logic and a
concrete vehicle backend.

The autonomy side only ever sees a ConnectorSession; swapping the
simulated plant for scripted mocks (or, eventually, real middleware)
requires no autonomy changes. The contract test suite in the test tree
runs against every backend.
"""

from __future__ import annotations

from abc import ABC, abstractmethod

from ..behaviors.geometry import LandingSite
from ..healthguard import HealthSample
from .plant import SimVehicle
from .types import CommandAck, VehicleCommand, VehicleState


class ConnectorError(Exception):
    pass


class AlreadyBound(ConnectorError):
    pass


class ConnectorSession(ABC):
    """Command/telemetry contract the autonomy programs against."""

    @abstractmethod
    def send_command(self, cmd: VehicleCommand) -> CommandAck: ...

    @abstractmethod
    def vehicle_state(self) -> VehicleState: ...

    @abstractmethod
    def health_sample(self) -> HealthSample: ...

    @abstractmethod
    def landing_sites(self) -> list[LandingSite]: ...

    @abstractmethod
    def set_detector(self, enabled: bool) -> None: ...


class Backend(ABC):
    """A backend hands out exactly one session at a time."""

    def __init__(self) -> None:
        self._bound = False

    def bind(self) -> ConnectorSession:
        if self._bound:
            raise AlreadyBound(type(self).__name__)
        self._bound = True
        return self._make_session()

    def release(self) -> None:
        self._bound = False

    @abstractmethod
    def _make_session(self) -> ConnectorSession: ...


class _SimSession(ConnectorSession):
    def __init__(self, plant: SimVehicle):
        self._plant = plant
        self._latest_sample: HealthSample | None = None

    def send_command(self, cmd: VehicleCommand) -> CommandAck:
        return self._plant.apply_command(cmd)

    def vehicle_state(self) -> VehicleState:
        return self._plant.state()

    def health_sample(self) -> HealthSample:
        if self._latest_sample is not None:
            return self._latest_sample
        plant = self._plant
        return HealthSample(
            timestamp=plant.sim_time,
            battery_fraction=plant.battery,
            battery_voltage=plant.cfg.v_empty
            + plant.battery * (plant.cfg.v_full - plant.cfg.v_empty),
            estimator_confidence=plant.estimator_confidence,
            actuators_ok=True,
            landing_sites_cached=len(plant.landing_sites()),
        )

    def note_sample(self, sample: HealthSample) -> None:
        self._latest_sample = sample

    def landing_sites(self) -> list[LandingSite]:
        return self._plant.landing_sites()

    def set_detector(self, enabled: bool) -> None:
        self._plant.set_detector(enabled)


class SimBackend(Backend):
    def __init__(self, plant: SimVehicle):
        super().__init__()
        self.plant = plant

    def _make_session(self) -> ConnectorSession:
        return _SimSession(self.plant)
