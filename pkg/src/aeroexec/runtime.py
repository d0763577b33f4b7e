"""Wires a complete mission: plant, connector session, health monitor,
event queue, state machine with its per-state trees, and the coordinator.
The Monte Carlo harness, the CLI and the ground-control service all run
missions through this one assembly."""

from __future__ import annotations

import time
from collections import deque
from dataclasses import dataclass, field
from typing import Any

from .behaviors import build_registry, build_state_tree
from .behaviors.context import BehaviorContext
from .bt.blackboard import Blackboard
from .bt.factory import build_tree
from .clock import SimClock
from .coordinator import Coordinator, EventQueue
from .fsm.events import HEALTH_EVENTS, Event, EventSource, resolve_priority
from .fsm.machine import MissionStateMachine
from .fsm.states import MissionState
from .healthguard import Healthguard
from .mission_plan import MissionPlan
from .runconfig import RunConfig
from .sim.connector import SimBackend
from .sim.faults import FaultInjection, FaultKind
from .sim.plant import SimVehicle
from .sim.types import VehicleCommand


class WiringError(Exception):
    pass


@dataclass
class StateEventTrigger:
    """Inject a named event a fixed delay after the first entry into a
    state (state None: at an absolute sim time)."""

    event: str
    state: str | None = None
    delay: float = 2.0
    fired: bool = False

    @classmethod
    def from_dict(cls, doc: dict) -> "StateEventTrigger":
        return cls(event=doc["event"], state=doc.get("state"),
                   delay=float(doc.get("delay", 2.0)))


@dataclass
class StateFaultTrigger:
    """Activate a plant fault a fixed delay after first entry into a state."""

    fault_kind: str
    state: str
    delay: float = 2.0
    duration: float | None = None
    factor: float = 1.0
    fired: bool = False


@dataclass
class RunResult:
    terminal_state: str
    sim_time: float
    wall_time: float
    cycles: int
    distance_flown: float
    timed_out: bool
    transitions: list = field(default_factory=list)
    events: list = field(default_factory=list)
    impacts: list = field(default_factory=list)
    task_log: list = field(default_factory=list)
    injected: list = field(default_factory=list)


class MissionRuntime:
    def __init__(
        self,
        config: RunConfig,
        seed: int = 0,
        plan: MissionPlan | None = None,
        backend=None,
        log_cycles: bool = False,
        trace: bool = False,
    ):
        self.config = config
        self.plan = plan or config.plan
        if self.plan is None:
            raise WiringError("no mission plan configured")
        self.clock = SimClock()
        self.plant: SimVehicle | None = None
        if backend is None:
            self.plant = SimVehicle(config.plant, seed)
            backend = SimBackend(self.plant)
        self.backend = backend
        self.session = backend.bind()

        self.healthguard = Healthguard(config.thresholds)
        self.queue = EventQueue(config.loop.queue_capacity)
        self.blackboard = Blackboard()
        self.ctx = BehaviorContext(
            blackboard=self.blackboard,
            session=self.session,
            params=config.params,
            clock=self.clock,
            emit_event=self._emit_from_tree,
            record_task=self._record_task,
        )
        self.ctx.set_plan(self.plan)

        registry = build_registry()
        self.machine = MissionStateMachine(
            config.table,
            tree_builder=lambda spec: build_tree(spec, registry, self.ctx, self.blackboard),
        )
        self._bind_states()

        self.coordinator = Coordinator(
            self.machine, self.queue, self.clock, config.loop,
            hold_command=self._send_hold, log_cycles=log_cycles,
        )
        self.coordinator.on_transition.append(self._note_transition)

        self.task_log: list[tuple[float, str]] = []
        self.recent_events: deque[dict] = deque(maxlen=32)
        self.event_triggers: list[StateEventTrigger] = []
        self.fault_triggers: list[StateFaultTrigger] = []
        self.injected: list[dict] = []
        self._entered_at: dict[str, float] = {}
        self.distance_flown = 0.0
        self._last_pos = self.session.vehicle_state().position
        self._next_sample = config.healthguard_period
        self.trace_rows: list[str] | None = (
            ["t,x,y,z,vx,vy,vz,battery,conf,armed,state"] if trace else None
        )
        if self.plant is not None:
            for fault in config.faults:
                self.plant.inject_fault(fault)
        self._started = False

    # -- wiring helpers -----------------------------------------------------

    def _bind_states(self) -> None:
        S = MissionState
        static = [S.IDLE, S.INIT, S.PRECHECKS, S.TAKEOFF, S.EMERGENCY_LAND]
        for state in static:
            if not self.config.table.is_final(state.value):
                self.machine.bind_state(state.value, build_state_tree(state.value))
        self.machine.bind_state(
            S.MISSION.value,
            lambda: build_state_tree(S.MISSION.value, plan=self.ctx.plan()),
        )
        self.machine.bind_state(
            S.LAND.value,
            build_state_tree(S.LAND.value),
            on_enter=lambda: self.healthguard.set_site_required(False),
            on_exit=lambda: self.healthguard.set_site_required(False),
        )

    def _emit_from_tree(self, name: str) -> None:
        source = EventSource.EXTERNAL if name in HEALTH_EVENTS else EventSource.INTERNAL
        event = Event(name, source, resolve_priority(name, self.config.priorities))
        self.coordinator.enqueue_event(event)
        self.recent_events.append({"t": self.clock.now(), "name": name, "source": "tree"})

    def _record_task(self, label: str) -> None:
        self.task_log.append((self.clock.now(), label))

    def _send_hold(self) -> None:
        self.session.send_command(VehicleCommand.hold())

    def _note_transition(self, record) -> None:
        self._entered_at.setdefault(record.dst, record.t)

    # -- external injection ---------------------------------------------------

    def post_event(self, name: str, payload: dict | None = None) -> bool:
        event = Event(name, EventSource.EXTERNAL,
                      resolve_priority(name, self.config.priorities), payload or {})
        accepted = self.coordinator.enqueue_event(event)
        self.recent_events.append({"t": self.clock.now(), "name": name, "source": "external"})
        return accepted

    def add_event_trigger(self, trigger: StateEventTrigger) -> None:
        self.event_triggers.append(trigger)

    def add_fault_trigger(self, trigger: StateFaultTrigger) -> None:
        if self.plant is None:
            raise WiringError("fault triggers need the simulated plant")
        self.fault_triggers.append(trigger)

    # -- the loop ---------------------------------------------------------------

    def start(self) -> None:
        self.coordinator.start()
        self._entered_at[self.machine.state] = self.clock.now()
        self.post_event("Start")
        self._started = True

    def step(self) -> None:
        """One full harness cycle: coordinator (events + tick), plant
        integration, health sampling, scheduled injections."""
        if not self._started:
            raise WiringError("start() the runtime before stepping")
        dt = self.config.loop.tick_period
        self.coordinator.run_cycle()

        if self.plant is not None:
            state, sample, _sites = self.plant.step(dt)
            if hasattr(self.session, "note_sample"):
                self.session.note_sample(sample)
            self.distance_flown += _dist(self._last_pos, state.position)
            self._last_pos = state.position
            self.clock.advance(dt)
            if self.clock.now() >= self._next_sample - 1e-9:
                self._next_sample += self.config.healthguard_period
                for event in self.healthguard.ingest(sample):
                    self.coordinator.enqueue_event(event)
                    self.recent_events.append(
                        {"t": self.clock.now(), "name": event.name, "source": "healthguard"})
            # Once sites have been seen while landing, losing them all is a
            # reportable condition.
            if (self.machine.state == MissionState.LAND.value
                    and sample.landing_sites_cached > 0):
                self.healthguard.set_site_required(True)
            if self.trace_rows is not None:
                p, v = state.position, state.velocity
                self.trace_rows.append(
                    f"{self.clock.now():.3f},{p[0]:.4f},{p[1]:.4f},{p[2]:.4f},"
                    f"{v[0]:.4f},{v[1]:.4f},{v[2]:.4f},{state.battery_fraction:.6f},"
                    f"{sample.estimator_confidence:.5f},{int(state.armed)},{self.machine.state}"
                )
        else:
            self.clock.advance(dt)
            if hasattr(self.session, "advance"):
                self.session.advance(dt)

        self._fire_triggers()

    def _fire_triggers(self) -> None:
        now = self.clock.now()
        for trig in self.event_triggers:
            if trig.fired:
                continue
            due_at = None
            if trig.state is None:
                due_at = trig.delay
            elif trig.state in self._entered_at:
                due_at = self._entered_at[trig.state] + trig.delay
            if due_at is not None and now >= due_at:
                trig.fired = True
                self.injected.append({"t": now, "event": trig.event,
                                      "trigger_state": trig.state,
                                      "state_at_injection": self.machine.state})
                self.post_event(trig.event)
        for ftrig in self.fault_triggers:
            if ftrig.fired or ftrig.state not in self._entered_at:
                continue
            if now >= self._entered_at[ftrig.state] + ftrig.delay:
                ftrig.fired = True
                self.plant.inject_fault(FaultInjection(
                    kind=FaultKind(ftrig.fault_kind), start=now,
                    duration=ftrig.duration, factor=ftrig.factor))
                self.injected.append({"t": now, "fault": str(ftrig.fault_kind),
                                      "trigger_state": ftrig.state,
                                      "state_at_injection": self.machine.state})

    def run(self, time_limit: float) -> RunResult:
        wall0 = time.perf_counter()
        if not self._started:
            self.start()
        while not self.machine.in_final and self.clock.now() < time_limit:
            self.step()
        return RunResult(
            terminal_state=self.machine.state,
            sim_time=self.clock.now(),
            wall_time=time.perf_counter() - wall0,
            cycles=self.coordinator.cycle_count,
            distance_flown=self.distance_flown,
            timed_out=not self.machine.in_final,
            transitions=list(self.coordinator.transitions),
            events=list(self.coordinator.event_log),
            impacts=list(self.plant.impacts) if self.plant else [],
            task_log=list(self.task_log),
            injected=list(self.injected),
        )

    # -- observation --------------------------------------------------------------

    def telemetry_frame(self, seq: int) -> dict[str, Any]:
        state = self.session.vehicle_state()
        tree = self.machine.active_tree()
        return {
            "v": 1,
            "seq": seq,
            "sim_time": round(self.clock.now(), 4),
            "vehicle": {
                "position": list(state.position),
                "velocity": list(state.velocity),
                "battery_fraction": round(state.battery_fraction, 5),
                "armed": state.armed,
                "mode": state.mode.value,
                "on_ground": state.on_ground,
            },
            "fsm_state": self.machine.state,
            "bt_snapshot": tree.snapshot() if tree else [],
            "recent_events": list(self.recent_events),
            "landing_sites": [s.to_dict() for s in self.session.landing_sites()],
        }


def _dist(a, b) -> float:
    return ((a[0] - b[0]) ** 2 + (a[1] - b[1]) ** 2 + (a[2] - b[2]) ** 2) ** 0.5
