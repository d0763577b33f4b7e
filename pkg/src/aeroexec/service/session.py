"""Live simulation session behind the ground-control service.

A background thread paces the mission runtime against the wall clock at a
configurable speed multiplier and publishes telemetry frames at a fixed
wall rate. Operator actions (plan upload, event injection, lifecycle
commands) funnel in through thread-safe entry points; the only autonomy
mutation path is the coordinator's event queue plus the staged-plan
mailbox.
"""

from __future__ import annotations

import threading
import time
from typing import Any

from ..fsm.events import HEALTH_EVENTS
from ..mission_plan import MissionPlan, PlanError, parse_plan, validate_plan
from ..runconfig import RunConfig, load_run_config
from ..runtime import MissionRuntime

KNOWN_EVENT_NAMES = set(HEALTH_EVENTS) | {"Start", "BtSuccess", "BtFailure"}

SPEED_MIN, SPEED_MAX = 0.1, 100.0


class SessionError(Exception):
    pass


class IllegalLifecycle(SessionError):
    pass


class NotIdle(SessionError):
    pass


class SimSession:
    def __init__(self, config_doc: dict, frame_period: float = 0.1, seed: int = 0):
        self.config_doc = dict(config_doc)
        self.frame_period = frame_period
        self.seed = seed
        self.lifecycle = "idle"          # idle | running | paused
        self.speed = 1.0
        self.staged_plan: MissionPlan | None = None
        self.runtime: MissionRuntime | None = None
        base = load_run_config(self.config_doc)
        if base.plan is not None:
            self.staged_plan = base.plan

        self.latest_frame: dict[str, Any] = self._idle_frame(0)
        self.frame_seq = 0
        self._lock = threading.RLock()
        self._stop = threading.Event()
        self._thread: threading.Thread | None = None
        self._sim_anchor = 0.0     # sim time at last anchor
        self._wall_anchor = 0.0    # wall time at last anchor

    # -- lifecycle ------------------------------------------------------------

    def start_thread(self) -> None:
        if self._thread is not None:
            return
        self._thread = threading.Thread(target=self._loop, name="sim-session", daemon=True)
        self._thread.start()

    def stop_thread(self) -> None:
        self._stop.set()
        if self._thread is not None:
            self._thread.join(timeout=2.0)
            self._thread = None

    def control(self, cmd: str, arg: Any = None) -> dict:
        with self._lock:
            if cmd == "start":
                if self.lifecycle != "idle":
                    raise IllegalLifecycle(f"start not allowed while {self.lifecycle}")
                if self.staged_plan is None:
                    raise IllegalLifecycle("no staged plan")
                config = load_run_config(self.config_doc)
                self.runtime = MissionRuntime(config, seed=self.seed, plan=self.staged_plan)
                self.runtime.start()
                self._anchor()
                self.lifecycle = "running"
            elif cmd == "pause":
                if self.lifecycle != "running":
                    raise IllegalLifecycle(f"pause not allowed while {self.lifecycle}")
                if self.runtime is not None and not self.runtime.machine.in_final:
                    try:
                        self.runtime.coordinator.bt_lifecycle("pause")
                    except Exception:
                        pass
                self.lifecycle = "paused"
            elif cmd == "resume":
                if self.lifecycle != "paused":
                    raise IllegalLifecycle(f"resume not allowed while {self.lifecycle}")
                if self.runtime is not None and not self.runtime.machine.in_final:
                    try:
                        self.runtime.coordinator.bt_lifecycle("execute")
                    except Exception:
                        pass
                self._anchor()
                self.lifecycle = "running"
            elif cmd == "set_speed":
                speed = float(arg)
                if not SPEED_MIN <= speed <= SPEED_MAX:
                    raise IllegalLifecycle(
                        f"speed must be in [{SPEED_MIN}, {SPEED_MAX}], got {speed}")
                self._anchor()
                self.speed = speed
            elif cmd == "reset":
                self.runtime = None
                self.lifecycle = "idle"
            else:
                raise SessionError(f"unknown sim command {cmd!r}")
            return {"v": 1, "ok": True, "lifecycle": self.lifecycle, "speed": self.speed}

    def _anchor(self) -> None:
        self._wall_anchor = time.perf_counter()
        self._sim_anchor = self.runtime.clock.now() if self.runtime else 0.0

    # -- operator entry points ----------------------------------------------------

    def upload_plan(self, data: bytes) -> dict:
        with self._lock:
            if self.lifecycle != "idle":
                raise NotIdle(f"sim is {self.lifecycle}")
            plan = parse_plan(data)   # PlanError passes through to the caller
            report = validate_plan(plan)
            if not report.passed:
                raise PlanError("; ".join(report.violations))
            self.staged_plan = plan
            return {"v": 1, "ok": True, "waypoints": len(plan.waypoints),
                    "path_length_m": round(plan.total_length(), 1)}

    def post_event(self, name: str) -> dict:
        if not name:
            raise SessionError("event name must be non-empty")
        with self._lock:
            if self.runtime is None:
                raise IllegalLifecycle("no active sim; start one first")
            accepted = self.runtime.post_event(name)
            ack = {
                "v": 1,
                "accepted": accepted,
                "enqueued_at": round(self.runtime.clock.now(), 4),
            }
            if name not in KNOWN_EVENT_NAMES:
                ack["advisory"] = "unmapped event name; dispatch will self-transition"
            return ack

    # -- pacing loop -------------------------------------------------------------

    def _loop(self) -> None:
        next_frame = time.perf_counter()
        while not self._stop.is_set():
            now = time.perf_counter()
            with self._lock:
                runtime = self.runtime
                if self.lifecycle == "running" and runtime is not None:
                    target_sim = self._sim_anchor + (now - self._wall_anchor) * self.speed
                    steps = 0
                    # Bounded catch-up keeps the lock hold time predictable.
                    while (runtime.clock.now() < target_sim
                           and not runtime.machine.in_final
                           and steps < 5000):
                        runtime.step()
                        steps += 1
                if now >= next_frame:
                    self.frame_seq += 1
                    if runtime is not None:
                        self.latest_frame = runtime.telemetry_frame(self.frame_seq)
                    else:
                        self.latest_frame = self._idle_frame(self.frame_seq)
                    next_frame += self.frame_period
                    if next_frame < now:
                        next_frame = now + self.frame_period
            tick = (self.runtime.config.loop.tick_period / self.speed
                    if self.runtime else self.frame_period)
            time.sleep(max(0.001, min(tick, next_frame - time.perf_counter(), 0.05)))

    def _idle_frame(self, seq: int) -> dict:
        return {
            "v": 1,
            "seq": seq,
            "sim_time": 0.0,
            "vehicle": {"position": [0.0, 0.0, 0.0], "velocity": [0.0, 0.0, 0.0],
                        "battery_fraction": 1.0, "armed": False, "mode": "manual",
                        "on_ground": True},
            "fsm_state": "Idle",
            "bt_snapshot": [],
            "recent_events": [],
            "landing_sites": [],
            "staged_plan": self.staged_plan.to_dict() if self.staged_plan else None,
        }

    def state_frame(self) -> dict:
        frame = dict(self.latest_frame)
        frame["lifecycle"] = self.lifecycle
        frame["speed"] = self.speed
        if self.staged_plan is not None and "staged_plan" not in frame:
            frame["staged_plan"] = self.staged_plan.to_dict()
        return frame
