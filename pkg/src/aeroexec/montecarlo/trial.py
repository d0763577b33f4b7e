"""Single seeded trial: build the mission from a TrialSpec, run it to a
final state (or the time limit), classify the outcome and verify every
logged transition against the table."""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from typing import Any

from ..fsm.events import BT_SUCCESS
from ..fsm.states import MissionState
from ..fsm.table import TransitionTable, dispatch
from ..mission_plan import MissionPlan, parse_plan
from ..runconfig import RunConfig, load_run_config
from ..runtime import MissionRuntime, StateEventTrigger, StateFaultTrigger
from .plans import generate_mission_plan, replay_plan

CRASH_VZ_LIMIT = 1.0   # m/s vertical speed at ground contact

COMPLETED = "Completed"
EMERGENCY_LANDING = "EmergencyLanding"
CRASH = "Crash"
TIMEOUT = "Timeout"

CLASSIFICATIONS = (COMPLETED, EMERGENCY_LANDING, CRASH, TIMEOUT)


@dataclass
class TrialSpec:
    seed: int
    plan: dict | None = None                 # explicit plan document
    plan_waypoints: int | None = None        # or generator parameters
    plan_distance: float | None = None
    injections: list[dict] = field(default_factory=list)
    fault_triggers: list[dict] = field(default_factory=list)
    faults: list[dict] = field(default_factory=list)
    time_limit: float | None = None
    start_battery: float | None = None
    tag: str = ""

    def to_dict(self) -> dict:
        return {k: v for k, v in vars(self).items() if v not in (None, [], "")}

    @classmethod
    def from_dict(cls, doc: dict) -> "TrialSpec":
        known = {f: doc.get(f) for f in (
            "seed", "plan", "plan_waypoints", "plan_distance", "time_limit",
            "start_battery", "tag")}
        known = {k: v for k, v in known.items() if v is not None}
        return cls(
            injections=list(doc.get("injections", [])),
            fault_triggers=list(doc.get("fault_triggers", [])),
            faults=list(doc.get("faults", [])),
            **known,
        )


@dataclass
class TrialOutcome:
    seed: int
    terminal_state: str
    classification: str
    sim_time: float
    wall_time: float
    cycles: int
    distance_flown: float
    plan_length: float
    transition_log: list[dict]
    event_log: list[dict]
    injected: list[dict]
    impacts: list[tuple[float, float]]
    task_log: list[tuple[float, str]]
    tag: str = ""
    trace_rows: list[str] | None = None   # telemetry CSV, trace runs only

    def to_dict(self) -> dict:
        return {
            "seed": self.seed,
            "tag": self.tag,
            "terminal_state": self.terminal_state,
            "classification": self.classification,
            "sim_time": round(self.sim_time, 3),
            "wall_time": round(self.wall_time, 4),
            "cycles": self.cycles,
            "distance_flown": round(self.distance_flown, 2),
            "plan_length": round(self.plan_length, 2),
            "transitions": self.transition_log,
            "injected": self.injected,
            "impacts": [[round(t, 3), round(vz, 4)] for t, vz in self.impacts],
        }


class WiringError(Exception):
    pass


def _resolve_plan(spec: TrialSpec, rng: random.Random) -> MissionPlan:
    if spec.plan is not None:
        return parse_plan(spec.plan)
    if spec.plan_waypoints and spec.plan_distance:
        return generate_mission_plan(rng, spec.plan_waypoints, spec.plan_distance)
    return replay_plan()


def default_time_limit(plan: MissionPlan, cruise_speed: float = 2.0) -> float:
    # Twice the endurance estimate: flight time plus generous overhead for
    # takeoff, tasks, searches and landing.
    return 2.0 * (plan.total_length() / cruise_speed + 240.0)


def run_trial(spec: TrialSpec, base_config: dict | None = None,
              trace: bool = False) -> TrialOutcome:
    """Deterministic function of the spec (plus an optional base run-config
    document): same inputs, same outcome, regardless of what ran before.
    With trace=True the outcome carries the per-cycle telemetry CSV rows
    (not serialized into report artifacts)."""
    rng = random.Random(spec.seed)
    config = load_run_config(dict(base_config or {"v": 1}))
    if spec.start_battery is not None:
        config.plant.start_battery = float(spec.start_battery)
    for fault_doc in spec.faults:
        from ..sim.faults import FaultInjection

        config.faults.append(FaultInjection.from_dict(fault_doc))

    plan = _resolve_plan(spec, rng)
    runtime = MissionRuntime(config, seed=spec.seed, plan=plan, trace=trace)
    for doc in spec.injections:
        runtime.add_event_trigger(StateEventTrigger.from_dict(doc))
    for doc in spec.fault_triggers:
        runtime.add_fault_trigger(StateFaultTrigger(
            fault_kind=doc["kind"], state=doc["state"],
            delay=float(doc.get("delay", 2.0)),
            duration=doc.get("duration"), factor=float(doc.get("factor", 1.0))))

    limit = spec.time_limit or default_time_limit(plan)
    result = runtime.run(limit)
    classification = classify(result, config.table)
    outcome = TrialOutcome(
        seed=spec.seed,
        terminal_state=result.terminal_state,
        classification=classification,
        sim_time=result.sim_time,
        wall_time=result.wall_time,
        cycles=result.cycles,
        distance_flown=result.distance_flown,
        plan_length=plan.total_length(),
        transition_log=[t.as_dict() for t in result.transitions],
        event_log=result.events,
        injected=result.injected,
        impacts=result.impacts,
        task_log=result.task_log,
        tag=spec.tag,
    )
    outcome.trace_rows = runtime.trace_rows
    return outcome


def classify(result, table: TransitionTable) -> str:
    """Exactly one classification per trial.

    Hard ground contact is a crash no matter what happened afterwards; a
    run that never reached a final state is a timeout (or, without the
    clock as an excuse, a crash-grade anomaly). Reaching Terminate through
    EmergencyLand is an emergency landing; via nominal Land it completed.
    """
    if any(abs(vz) > CRASH_VZ_LIMIT for _, vz in result.impacts):
        return CRASH
    if result.timed_out:
        return TIMEOUT
    if not table.is_final(result.terminal_state):
        return CRASH
    visited = {t.dst for t in result.transitions}
    if MissionState.EMERGENCY_LAND.value in visited:
        return EMERGENCY_LANDING
    if result.transitions:
        last = result.transitions[-1]
        if (last.src == MissionState.LAND.value and last.event == BT_SUCCESS
                and table.is_final(last.dst)):
            return COMPLETED
    # Final state reached by an unexpected route (e.g. a ground abort):
    # flag it loudly rather than letting it pass as a completion.
    return CRASH


@dataclass
class VerifyReport:
    checked: int
    mismatches: list[str] = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return not self.mismatches


def verify_trial(outcome: TrialOutcome, table: TransitionTable) -> VerifyReport:
    """Replay every logged (state, event) pair through dispatch and check
    the logged next state matches; also checks chain continuity from the
    initial state."""
    report = VerifyReport(checked=len(outcome.transition_log))
    expected_src = table.initial
    for i, rec in enumerate(outcome.transition_log):
        if rec["from"] != expected_src:
            report.mismatches.append(
                f"transitions[{i}]: chain break, expected from={expected_src}, "
                f"logged {rec['from']}")
        dst, transitioned = dispatch(rec["from"], rec["event"], table)
        if not transitioned or dst != rec["to"]:
            report.mismatches.append(
                f"transitions[{i}]: dispatch({rec['from']}, {rec['event']}) -> "
                f"({dst}, {transitioned}), logged to={rec['to']}")
        expected_src = rec["to"]
    return report
