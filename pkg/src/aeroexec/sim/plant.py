"""Point-mass flight plant with battery discharge, an estimator-confidence
model, a landing-site detector stub and fault injection.

The autonomy under test consumes pose, velocity, battery and confidence;
this plant models exactly that and nothing more. Velocity tracks the
active setpoint first-order (exact discretization, so trajectories are
reproducible bit-for-bit under a fixed seed), battery drains linearly in
speed while armed, and the detector samples sites at a fixed cadence with
clamped-Gaussian confidence.
"""

from __future__ import annotations

import math
import random
from dataclasses import dataclass, field

from .. import vec
from ..behaviors.geometry import LandingSite
from ..healthguard import HealthSample
from .faults import BadSchedule, FaultInjection, FaultKind
from .types import (
    REASON_AIRBORNE,
    REASON_MODE_NOT_OFFBOARD,
    REASON_NON_FINITE,
    REASON_NOT_ARMED,
    CommandAck,
    CommandKind,
    VehicleCommand,
    VehicleMode,
    VehicleState,
)


class PlantError(Exception):
    pass


class NotInitialized(PlantError):
    pass


@dataclass
class PlantConfig:
    v_max: float = 3.0                 # m/s speed clamp
    tracking_tau: float = 0.5          # s, velocity tracking constant
    brake_tau: float = 0.15            # s, aggressive stop for Hold
    position_gain: float = 1.2         # 1/s, position-error to velocity
    p_hover: float = 1.0               # power units while armed
    k_v: float = 0.2                   # power units per m/s
    e_cap: float = 900.0               # energy units (15 min hover at defaults)
    start_battery: float = 1.0
    ground_z: float = 0.0
    ground_eps: float = 0.05
    allow_airborne_arm: bool = False
    # Battery voltage model (6S pack endpoints).
    v_empty: float = 19.8
    v_full: float = 25.2
    # Estimator confidence model.
    estimator_tau: float = 1.0         # s, decay constant during dropout
    estimator_recovery: float = 0.2    # confidence per second after recovery
    # Landing site detector stub.
    detector_period: float = 1.0       # s between detection attempts
    detector_p: float = 0.9            # chance a pass yields a site
    detector_footprint: float = 20.0   # m, sites land within this circle
    confidence_mu: float = 0.75
    confidence_sigma: float = 0.15
    site_ttl: float = 20.0             # s before a cached site goes stale
    max_sites: int = 12

    @classmethod
    def from_dict(cls, doc: dict) -> "PlantConfig":
        cfg = cls()
        for key, value in doc.items():
            if not hasattr(cfg, key):
                raise PlantError(f"unknown vehicle parameter {key!r}")
            setattr(cfg, key, type(getattr(cfg, key))(value))
        return cfg


@dataclass
class _Setpoint:
    kind: CommandKind | None = None
    target: vec.Vec3 = vec.ZERO
    speed: float | None = None


class SimVehicle:
    def __init__(self, cfg: PlantConfig | None = None, seed: int = 0):
        self.cfg = cfg or PlantConfig()
        self._rng = random.Random(seed)
        self._t = 0.0
        self.position: vec.Vec3 = (0.0, 0.0, self.cfg.ground_z)
        self.velocity: vec.Vec3 = vec.ZERO
        self.armed = False
        self.mode = VehicleMode.MANUAL
        self.battery = self.cfg.start_battery
        self.on_ground = True
        self.estimator_confidence = 1.0
        self._setpoint = _Setpoint()
        self._faults: list[FaultInjection] = []
        self.detector_enabled = False
        self._sites: list[LandingSite] = []
        self._next_detect = self.cfg.detector_period
        self.impacts: list[tuple[float, float]] = []   # (t, vz at contact)
        self.energy_used = 0.0
        self._initialized = True

    # -- commands -----------------------------------------------------------

    def apply_command(self, cmd: VehicleCommand) -> CommandAck:
        if cmd.kind is CommandKind.SET_MODE:
            self.mode = cmd.mode or VehicleMode.MANUAL
            return CommandAck(True)

        if cmd.kind is CommandKind.ARM:
            if self.mode is not VehicleMode.OFFBOARD:
                return CommandAck(False, REASON_MODE_NOT_OFFBOARD)
            if not self.on_ground and not self.cfg.allow_airborne_arm and not self.armed:
                return CommandAck(False, REASON_AIRBORNE)
            self.armed = True
            return CommandAck(True)

        if cmd.kind is CommandKind.DISARM:
            if not self.on_ground and not cmd.force:
                return CommandAck(False, REASON_AIRBORNE)
            self.armed = False
            self._setpoint = _Setpoint()
            return CommandAck(True)

        # Motion commands need an armed vehicle in offboard mode.
        if not self.armed:
            return CommandAck(False, REASON_NOT_ARMED)
        if self.mode is not VehicleMode.OFFBOARD:
            return CommandAck(False, REASON_MODE_NOT_OFFBOARD)

        if cmd.kind is CommandKind.HOLD:
            self._setpoint = _Setpoint(CommandKind.HOLD)
            return CommandAck(True)

        if cmd.setpoint is None or not vec.is_finite(cmd.setpoint):
            return CommandAck(False, REASON_NON_FINITE)
        self._setpoint = _Setpoint(cmd.kind, cmd.setpoint, cmd.speed)
        return CommandAck(True)

    # -- faults -----------------------------------------------------------------

    def inject_fault(self, fault: FaultInjection) -> None:
        if fault.start < self._t:
            raise BadSchedule(f"fault start {fault.start} is in the past (t={self._t})")
        self._faults.append(fault)

    def _fault_active(self, kind: FaultKind) -> bool:
        return any(f.kind is kind and f.active_at(self._t) for f in self._faults)

    def _drain_multiplier(self) -> float:
        mult = 1.0
        for f in self._faults:
            if f.kind is FaultKind.BATTERY_DRAIN_MULTIPLIER and f.active_at(self._t):
                mult *= f.factor
        return mult

    # -- detector --------------------------------------------------------------------

    def set_detector(self, enabled: bool) -> None:
        self.detector_enabled = enabled

    def landing_sites(self) -> list[LandingSite]:
        return list(self._sites)

    def _step_detector(self) -> None:
        ttl = self.cfg.site_ttl
        self._sites = [s for s in self._sites if self._t - s.detected_at < ttl]
        if self._t < self._next_detect:
            return
        while self._next_detect <= self._t:
            self._next_detect += self.cfg.detector_period
        if not self.detector_enabled or self._fault_active(FaultKind.DETECTOR_BLIND):
            return
        if self._rng.random() >= self.cfg.detector_p:
            return
        r = self.cfg.detector_footprint / 2.0 * math.sqrt(self._rng.random())
        theta = self._rng.uniform(0.0, 2.0 * math.pi)
        confidence = min(1.0, max(0.0, self._rng.gauss(self.cfg.confidence_mu,
                                                       self.cfg.confidence_sigma)))
        site = LandingSite(
            position=(self.position[0] + r * math.cos(theta),
                      self.position[1] + r * math.sin(theta),
                      self.cfg.ground_z),
            confidence=confidence,
            radius=self._rng.uniform(2.0, 5.0),
            detected_at=self._t,
        )
        self._sites.append(site)
        if len(self._sites) > self.cfg.max_sites:
            self._sites = self._sites[-self.cfg.max_sites:]

    # -- integration ------------------------------------------------------------------

    def step(self, dt: float) -> tuple[VehicleState, HealthSample, list[LandingSite]]:
        if not getattr(self, "_initialized", False):
            raise NotInitialized
        if dt <= 0:
            raise PlantError("dt must be > 0")
        cfg = self.cfg

        v_des, tau = self._desired_velocity()
        alpha = 1.0 - math.exp(-dt / tau)
        v = vec.add(self.velocity, vec.scale(vec.sub(v_des, self.velocity), alpha))
        v = vec.clamp_norm(v, cfg.v_max)
        pos = vec.add(self.position, vec.scale(v, dt))

        was_airborne = not self.on_ground
        if pos[2] <= cfg.ground_z + cfg.ground_eps and v[2] <= 0.0:
            if was_airborne:
                self.impacts.append((self._t + dt, v[2]))
            pos = (pos[0], pos[1], cfg.ground_z)
            v = vec.ZERO
            self.on_ground = True
        elif pos[2] > cfg.ground_z + cfg.ground_eps:
            self.on_ground = False
        self.position = pos
        self.velocity = v

        if self.armed:
            power = cfg.p_hover + cfg.k_v * vec.norm(v)
            drain = power * dt / cfg.e_cap * self._drain_multiplier()
            self.energy_used += power * dt * self._drain_multiplier()
            self.battery = max(0.0, self.battery - drain)

        if self._fault_active(FaultKind.ESTIMATOR_DROPOUT):
            self.estimator_confidence *= math.exp(-dt / cfg.estimator_tau)
        else:
            self.estimator_confidence = min(1.0, self.estimator_confidence
                                            + cfg.estimator_recovery * dt)

        self._t += dt
        self._step_detector()

        state = self.state()
        sample = HealthSample(
            timestamp=self._t,
            battery_fraction=self.battery,
            battery_voltage=cfg.v_empty + self.battery * (cfg.v_full - cfg.v_empty),
            estimator_confidence=self.estimator_confidence,
            actuators_ok=not self._fault_active(FaultKind.ACTUATOR_STUCK),
            landing_sites_cached=len(self._sites),
        )
        return state, sample, self.landing_sites()

    def _desired_velocity(self) -> tuple[vec.Vec3, float]:
        cfg = self.cfg
        sp = self._setpoint
        if not self.armed or self.mode is not VehicleMode.OFFBOARD or sp.kind is None:
            return vec.ZERO, cfg.brake_tau
        if sp.kind is CommandKind.HOLD:
            return vec.ZERO, cfg.brake_tau
        if sp.kind is CommandKind.VELOCITY_SETPOINT:
            return vec.clamp_norm(sp.target, cfg.v_max), cfg.tracking_tau
        # Position setpoint: speed proportional to distance, capped.
        err = vec.sub(sp.target, self.position)
        distance = vec.norm(err)
        if distance == 0.0:
            return vec.ZERO, cfg.tracking_tau
        limit = min(cfg.v_max, sp.speed) if sp.speed else cfg.v_max
        speed = min(limit, cfg.position_gain * distance)
        return vec.scale(err, speed / distance), cfg.tracking_tau

    def state(self) -> VehicleState:
        return VehicleState(
            position=self.position,
            velocity=self.velocity,
            armed=self.armed,
            mode=self.mode,
            battery_fraction=self.battery,
            on_ground=self.on_ground,
            t=self._t,
        )

    @property
    def sim_time(self) -> float:
        return self._t
