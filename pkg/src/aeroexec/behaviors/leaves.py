"""Canonical leaf nodes: the conditions and actions the per-state trees are
assembled from. Each leaf talks to the vehicle exclusively through the
connector session on its context.

Leaves are constructed once per tree node; anything per-activation lives
in on_reset().
"""

from __future__ import annotations

from ..bt.factory import NodeRegistry
from ..bt.nodes import LeafImpl, NodeStatus
from ..sim.types import VehicleCommand, VehicleMode
from ..vec import dist_xy
from .context import BehaviorContext
from .geometry import compute_takeoff_timeout, generate_search_pattern, select_landing_site

SUCCESS = NodeStatus.SUCCESS
FAILURE = NodeStatus.FAILURE
RUNNING = NodeStatus.RUNNING

# Tunables, all overridable through the parameter server.
DEFAULTS = {
    "behaviors.ascent_speed": 1.5,
    "behaviors.descend_speed": 0.5,
    "behaviors.touchdown_speed": 0.4,
    "behaviors.emergency_descent_speed": 1.5,
    "behaviors.rapid_descend_to": 2.0,
    "behaviors.descend_to": 1.0,
    "behaviors.waypoint_tolerance": 1.0,
    "behaviors.altitude_tolerance": 0.3,
    "behaviors.cruise_speed": 2.5,
    "behaviors.connect_duration_s": 2.5,
    "behaviors.zero_odometry_duration_s": 0.5,
    "behaviors.min_mission_battery": 0.35,
    "behaviors.min_confidence": 0.6,
    "behaviors.search_extent_m": 40.0,
    "behaviors.search_leg_spacing_m": 8.0,
    "behaviors.search_altitude_offset_m": 5.0,
    "behaviors.min_search_altitude_m": 3.0,
    "behaviors.approach_altitude_m": 6.0,
    "behaviors.site_verify_dwell_s": 3.0,
    "behaviors.timeout_margin_factor": 2.0,
    "behaviors.timeout_floor_s": 5.0,
    "behaviors.site_search_dwell_s": 2.0,
}


class _Leaf(LeafImpl):
    def __init__(self, params: dict, ctx: BehaviorContext):
        self.params = params
        self.ctx = ctx

    def p(self, key: str):
        return self.ctx.param(f"behaviors.{key}", DEFAULTS[f"behaviors.{key}"])

    @property
    def bb(self):
        return self.ctx.blackboard

    @property
    def session(self):
        return self.ctx.session


# -- conditions -----------------------------------------------------------------


class HealthOk(_Leaf):
    def execute(self) -> NodeStatus:
        sample = self.session.health_sample()
        critical = self.ctx.param("healthguard.battery_critical", 0.15)
        floor = self.ctx.param("healthguard.estimator_floor", 0.30)
        ok = (sample.actuators_ok
              and sample.battery_fraction > critical
              and sample.estimator_confidence >= floor)
        return SUCCESS if ok else FAILURE


class PlanLoaded(_Leaf):
    def execute(self) -> NodeStatus:
        return SUCCESS if self.ctx.plan() is not None else FAILURE


class BatteryAboveMinimum(_Leaf):
    def execute(self) -> NodeStatus:
        sample = self.session.health_sample()
        return SUCCESS if sample.battery_fraction > self.p("min_mission_battery") else FAILURE


class EstimatorOk(_Leaf):
    def execute(self) -> NodeStatus:
        sample = self.session.health_sample()
        floor = self.ctx.param("healthguard.estimator_floor", 0.30)
        return SUCCESS if sample.estimator_confidence >= floor else FAILURE


class HomeRecorded(_Leaf):
    def execute(self) -> NodeStatus:
        return SUCCESS if self.bb.has("home_position") else FAILURE


class HaveSite(_Leaf):
    def execute(self) -> NodeStatus:
        pos = self.session.vehicle_state().position
        site = select_landing_site(self.session.landing_sites(), pos,
                                   "closest", self.p("min_confidence"))
        return SUCCESS if site is not None else FAILURE


class SitesFound(_Leaf):
    def execute(self) -> NodeStatus:
        sites = self.session.landing_sites()
        min_conf = self.p("min_confidence")
        return SUCCESS if any(s.confidence >= min_conf for s in sites) else FAILURE


class FinalChecks(_Leaf):
    """Last gate before touchdown: estimator and actuators healthy and an
    acceptable site still cached."""

    def execute(self) -> NodeStatus:
        sample = self.session.health_sample()
        floor = self.ctx.param("healthguard.estimator_floor", 0.30)
        if not sample.actuators_ok or sample.estimator_confidence < floor:
            return FAILURE
        min_conf = self.p("min_confidence")
        if not any(s.confidence >= min_conf for s in self.session.landing_sites()):
            return FAILURE
        return SUCCESS


# -- generic / idle actions ------------------------------------------------------


class AwaitStart(_Leaf):
    """Idles forever; leaving Idle is driven by the Start event."""

    def execute(self) -> NodeStatus:
        return RUNNING


class TimedAction(_Leaf):
    """Base for actions that simply take a while."""

    duration_key = ""

    def on_reset(self) -> None:
        self._t0 = self.ctx.clock.now()

    def duration(self) -> float:
        return self.p(self.duration_key)

    def execute(self) -> NodeStatus:
        if self.ctx.clock.now() - self._t0 >= self.duration():
            return self.finish()
        return RUNNING

    def finish(self) -> NodeStatus:
        return SUCCESS


class LoadPlan(_Leaf):
    def execute(self) -> NodeStatus:
        plan = self.ctx.plan()
        if plan is None:
            return FAILURE
        self.bb.set("cruise_altitude", plan.cruise_altitude)
        return SUCCESS


class ConnectVehicle(TimedAction):
    duration_key = "connect_duration_s"


class ZeroOdometry(TimedAction):
    duration_key = "zero_odometry_duration_s"

    def finish(self) -> NodeStatus:
        state = self.session.vehicle_state()
        self.bb.set("home_position", state.position)
        return SUCCESS


# -- takeoff ------------------------------------------------------------------


class SetModeOffboard(_Leaf):
    def execute(self) -> NodeStatus:
        ack = self.session.send_command(VehicleCommand.set_mode(VehicleMode.OFFBOARD))
        return SUCCESS if ack.accepted else FAILURE


class Arm(_Leaf):
    def execute(self) -> NodeStatus:
        ack = self.session.send_command(VehicleCommand.arm())
        return SUCCESS if ack.accepted else FAILURE


class AscendTo(_Leaf):
    """Climb at the configured ascent rate; lateral axes hold position."""

    def target_altitude(self) -> float:
        plan = self.ctx.plan()
        if self.bb.has("cruise_altitude"):
            return float(self.bb.get("cruise_altitude"))
        return plan.cruise_altitude if plan else 10.0

    def execute(self) -> NodeStatus:
        state = self.session.vehicle_state()
        if state.position[2] >= self.target_altitude() - self.p("altitude_tolerance"):
            self.session.send_command(VehicleCommand.hold())
            return SUCCESS
        ack = self.session.send_command(
            VehicleCommand.velocity((0.0, 0.0, self.p("ascent_speed"))))
        return RUNNING if ack.accepted else FAILURE

    def on_halt(self) -> None:
        self.session.send_command(VehicleCommand.hold())


class _DescendBase(_Leaf):
    """Descend at a fixed rate until an altitude (or ground contact)."""

    def rate(self) -> float:
        raise NotImplementedError

    def done(self, state) -> bool:
        raise NotImplementedError

    def execute(self) -> NodeStatus:
        state = self.session.vehicle_state()
        if self.done(state):
            return SUCCESS
        ack = self.session.send_command(VehicleCommand.velocity((0.0, 0.0, -self.rate())))
        return RUNNING if ack.accepted else FAILURE


class Descend(_DescendBase):
    def rate(self) -> float:
        return self.p("descend_speed")

    def done(self, state) -> bool:
        return state.on_ground or state.position[2] <= self.p("descend_to")


class TouchDown(_DescendBase):
    def rate(self) -> float:
        return self.p("touchdown_speed")

    def done(self, state) -> bool:
        return state.on_ground


class RapidDescend(_DescendBase):
    def rate(self) -> float:
        return self.p("emergency_descent_speed")

    def done(self, state) -> bool:
        return state.on_ground or state.position[2] <= self.p("rapid_descend_to")


class Disarm(_Leaf):
    def execute(self) -> NodeStatus:
        state = self.session.vehicle_state()
        if not state.armed:
            return SUCCESS
        ack = self.session.send_command(VehicleCommand.disarm(
            force=bool(self.params.get("force", False))))
        return SUCCESS if ack.accepted else FAILURE


# -- mission -----------------------------------------------------------------


class GoToWaypoint(_Leaf):
    def waypoint(self):
        plan = self.ctx.plan()
        if plan is None:
            return None
        index = int(self.params["wp_index"])
        if index >= len(plan.waypoints):
            return None
        return plan.waypoints[index]

    def execute(self) -> NodeStatus:
        wp = self.waypoint()
        if wp is None:
            return FAILURE
        state = self.session.vehicle_state()
        from ..vec import dist

        if dist(state.position, wp.position) <= self.p("waypoint_tolerance"):
            return SUCCESS
        speed = wp.speed if wp.speed else self.p("cruise_speed")
        ack = self.session.send_command(VehicleCommand.position(wp.position, speed=speed))
        return RUNNING if ack.accepted else FAILURE


class ScienceTask(TimedAction):
    """Timed data capture placeholder; records completion on the blackboard
    and in the task log."""

    def duration(self) -> float:
        return float(self.params.get("duration_s", 3.0))

    def execute(self) -> NodeStatus:
        self.session.send_command(VehicleCommand.hold())
        return super().execute()

    def finish(self) -> NodeStatus:
        label = self.params.get("label", "science")
        self.bb.set(f"task.science.{label}", self.ctx.clock.now())
        self.ctx.record_task(f"Science:{label}")
        return SUCCESS


class LandingSiteSearchTask(TimedAction):
    """Runs the detector for a dwell period and caches what it saw."""

    duration_key = "site_search_dwell_s"

    def on_reset(self) -> None:
        super().on_reset()
        self.session.set_detector(True)
        self.session.send_command(VehicleCommand.hold())

    def finish(self) -> NodeStatus:
        self.bb.set("landing_sites", self.session.landing_sites())
        self.session.set_detector(False)
        label = self.params.get("label", "sites")
        self.ctx.record_task(f"LandingSiteSearch:{label}")
        return SUCCESS

    def on_halt(self) -> None:
        self.session.set_detector(False)


# -- landing -----------------------------------------------------------------


class FlySearchPattern(_Leaf):
    """Sweeps a lawnmower pattern with the detector on, finishing early as
    soon as an acceptable site is cached. Fails only when the full pattern
    is exhausted without a find."""

    def on_reset(self) -> None:
        state = self.session.vehicle_state()
        cruise = float(self.bb.get_or("cruise_altitude", 10.0))
        altitude = max(self.p("min_search_altitude_m"),
                       cruise - self.p("search_altitude_offset_m"))
        pattern = generate_search_pattern(
            state.position, self.p("search_extent_m"),
            self.p("search_leg_spacing_m"), altitude)
        self._waypoints = pattern.waypoints
        self._index = 0
        self.session.set_detector(True)
        self.bb.set("search_performed", True)

    def execute(self) -> NodeStatus:
        min_conf = self.p("min_confidence")
        if any(s.confidence >= min_conf for s in self.session.landing_sites()):
            self.bb.set("landing_sites", self.session.landing_sites())
            return SUCCESS
        if self._index >= len(self._waypoints):
            return FAILURE
        state = self.session.vehicle_state()
        target = self._waypoints[self._index]
        from ..vec import dist

        if dist(state.position, target) <= self.p("waypoint_tolerance"):
            self._index += 1
            return RUNNING
        ack = self.session.send_command(VehicleCommand.position(target))
        return RUNNING if ack.accepted else FAILURE


class GoToSite(_Leaf):
    """Selects the landing site, flies over it at approach altitude and
    hovers there for a verification dwell before handing off to the final
    checks. Selection policy: closest when sites were already on hand,
    most confident after a dedicated search."""

    def on_reset(self) -> None:
        self._site = None
        self._arrived_at: float | None = None
        self.session.set_detector(True)

    def execute(self) -> NodeStatus:
        if self._site is None:
            state = self.session.vehicle_state()
            policy = "most_confident" if self.bb.get_or("search_performed", False) else "closest"
            self._site = select_landing_site(self.session.landing_sites(), state.position,
                                             policy, self.p("min_confidence"))
            if self._site is None:
                return FAILURE
            self.bb.set("selected_site", [self._site])
        state = self.session.vehicle_state()
        target = (self._site.position[0], self._site.position[1],
                  self._site.position[2] + self.p("approach_altitude_m"))
        if dist_xy(state.position, target) > self.p("waypoint_tolerance"):
            self._arrived_at = None
            ack = self.session.send_command(VehicleCommand.position(target))
            return RUNNING if ack.accepted else FAILURE
        if self._arrived_at is None:
            self._arrived_at = self.ctx.clock.now()
            self.session.send_command(VehicleCommand.hold())
        if self.ctx.clock.now() - self._arrived_at < self.p("site_verify_dwell_s"):
            return RUNNING
        return SUCCESS


class EmitEvent(_Leaf):
    """Bridges tree-level conclusions into executive events. Emits once per
    activation; the default Running result parks the tree until the event
    drives a transition (which halts it)."""

    def on_reset(self) -> None:
        self._emitted = False

    def execute(self) -> NodeStatus:
        if not self._emitted:
            self.ctx.emit_event(self.params["event"])
            self._emitted = True
        result = self.params.get("result", "running")
        return {"running": RUNNING, "success": SUCCESS, "failure": FAILURE}[result]


# -- registry -----------------------------------------------------------------


LEAVES: dict[str, type[_Leaf]] = {
    "HealthOK": HealthOk,
    "PlanLoaded": PlanLoaded,
    "BatteryAboveMinimum": BatteryAboveMinimum,
    "EstimatorOK": EstimatorOk,
    "HomeRecorded": HomeRecorded,
    "HaveSite": HaveSite,
    "SitesFound": SitesFound,
    "FinalChecks": FinalChecks,
    "AwaitStart": AwaitStart,
    "LoadPlan": LoadPlan,
    "ConnectVehicle": ConnectVehicle,
    "ZeroOdometry": ZeroOdometry,
    "SetModeOffboard": SetModeOffboard,
    "Arm": Arm,
    "AscendTo": AscendTo,
    "Descend": Descend,
    "Land": TouchDown,
    "TouchDown": TouchDown,
    "RapidDescend": RapidDescend,
    "Disarm": Disarm,
    "GoToWaypoint": GoToWaypoint,
    "ScienceTask": ScienceTask,
    "LandingSiteSearchTask": LandingSiteSearchTask,
    "FlySearchPattern": FlySearchPattern,
    "GoToSite": GoToSite,
    "EmitEvent": EmitEvent,
}


def takeoff_timeout(ctx: BehaviorContext) -> float:
    """Climb time budget from current altitude, ascent rate and margins."""
    state = ctx.session.vehicle_state()
    plan = ctx.plan()
    cruise = float(ctx.blackboard.get_or(
        "cruise_altitude", plan.cruise_altitude if plan else 10.0))
    distance = max(0.0, cruise - state.position[2])
    return compute_takeoff_timeout(
        distance,
        ctx.param("behaviors.ascent_speed", DEFAULTS["behaviors.ascent_speed"]),
        ctx.param("behaviors.timeout_margin_factor", DEFAULTS["behaviors.timeout_margin_factor"]),
        ctx.param("behaviors.timeout_floor_s", DEFAULTS["behaviors.timeout_floor_s"]),
    )


def build_registry() -> NodeRegistry:
    registry = NodeRegistry()
    for name, cls in LEAVES.items():
        registry.register(name, lambda params, ctx, cls=cls: cls(params, ctx))
    registry.register_duration("takeoff_timeout", takeoff_timeout)
    return registry
