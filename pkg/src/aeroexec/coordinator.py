"""The main execution loop.

One coordinator cycle drains the prioritized event queue (applying at most
one state-changing transition, so halt/exit/enter ordering is always
observable), ticks the active behavior tree once, and feeds the tree's
terminal status back into the queue as an internal event for the next
cycle.

enqueue_event is the only cross-thread entry point: the health monitor,
the connector, the ground-control service and test harnesses all funnel
through it. Everything else runs on the loop context.
"""

from __future__ import annotations

import heapq
import json
import logging
import threading
import time
from dataclasses import dataclass, field
from typing import Any, Callable

from .bt.nodes import NodeStatus
from .fsm.events import BT_FAILURE, BT_SUCCESS, Event
from .fsm.machine import MissionStateMachine, NoActiveTree
from .fsm.table import dispatch

log = logging.getLogger(__name__)


class CoordinatorError(Exception):
    pass


class NotInitialized(CoordinatorError):
    pass


class ResetWhileRunning(CoordinatorError):
    pass


@dataclass
class LoopConfig:
    tick_period: float = 0.02          # 50 Hz
    max_events_per_cycle: int | None = None  # None: drain everything pending
    queue_capacity: int = 256

    def __post_init__(self) -> None:
        if self.tick_period <= 0:
            raise ValueError("tick_period must be > 0")
        if self.max_events_per_cycle is not None and self.max_events_per_cycle < 1:
            raise ValueError("max_events_per_cycle must be >= 1")


class EventQueue:
    """Bounded priority queue: pop order is (priority desc, enqueue order
    asc). Never blocks an enqueuer; on overflow the lowest-priority pending
    event is dropped (the incoming one, if it ranks lowest). Pending
    external events coalesce by name, keeping the earliest, so a monitor
    re-emitting a persistent condition cannot flood the loop."""

    def __init__(self, capacity: int = 256):
        self.capacity = capacity
        self._heap: list[tuple[int, int, Event]] = []
        self._seq = 0
        self._pending_external: set[str] = set()
        self._lock = threading.Lock()
        self._wakeup = threading.Condition(self._lock)
        self.dropped: list[str] = []

    def enqueue(self, event: Event) -> bool:
        from .fsm.events import EventSource  # local to avoid import fuss

        with self._wakeup:
            if event.source is EventSource.EXTERNAL and event.name in self._pending_external:
                # Coalesced with the earlier identical event.
                self._wakeup.notify_all()
                return True
            if len(self._heap) >= self.capacity:
                # Entries are (-priority, seq, event): the max entry is the
                # lowest-priority, most recently queued one.
                worst = max(self._heap, key=lambda e: (e[0], e[1]))
                if -worst[0] >= event.priority:
                    self.dropped.append(event.name)
                    log.warning("event queue full; dropped incoming %s", event.name)
                    return False
                self._heap.remove(worst)
                heapq.heapify(self._heap)
                if worst[2].source is EventSource.EXTERNAL:
                    self._pending_external.discard(worst[2].name)
                self.dropped.append(worst[2].name)
                log.warning("event queue full; dropped pending %s", worst[2].name)
            event.wall_t = time.perf_counter()
            heapq.heappush(self._heap, (-event.priority, self._seq, event))
            self._seq += 1
            if event.source is EventSource.EXTERNAL:
                self._pending_external.add(event.name)
            self._wakeup.notify_all()
            return True

    def pop(self) -> Event | None:
        from .fsm.events import EventSource

        with self._lock:
            if not self._heap:
                return None
            _, _, event = heapq.heappop(self._heap)
            if event.source is EventSource.EXTERNAL:
                self._pending_external.discard(event.name)
            return event

    def wait_for_event(self, timeout: float) -> bool:
        """Block up to `timeout` seconds for something to arrive."""
        with self._wakeup:
            if self._heap:
                return True
            return self._wakeup.wait(timeout) and bool(self._heap)

    def __len__(self) -> int:
        with self._lock:
            return len(self._heap)


@dataclass
class TransitionRecord:
    cycle: int
    t: float
    src: str
    event: str
    dst: str

    def as_dict(self) -> dict:
        return {"cycle": self.cycle, "t": round(self.t, 6), "from": self.src,
                "event": self.event, "to": self.dst}


@dataclass
class CycleReport:
    cycle: int
    sim_time: float
    state: str
    popped_events: list[str] = field(default_factory=list)
    transition: dict | None = None
    root_status: str | None = None

    def to_json(self) -> str:
        doc = {"cycle": self.cycle, "sim_time": round(self.sim_time, 6), "state": self.state,
               "popped_events": self.popped_events}
        if self.transition is not None:
            doc["transition"] = self.transition
        if self.root_status is not None:
            doc["root_status"] = self.root_status
        return json.dumps(doc, separators=(",", ":"))


class Coordinator:
    def __init__(
        self,
        machine: MissionStateMachine,
        queue: EventQueue,
        clock: Any,
        cfg: LoopConfig | None = None,
        hold_command: Callable[[], None] | None = None,
        log_cycles: bool = False,
    ):
        self.machine = machine
        self.queue = queue
        self.clock = clock
        self.cfg = cfg or LoopConfig()
        self._hold_command = hold_command
        self.cycle_count = 0
        self.paused = False
        self.transitions: list[TransitionRecord] = []
        self.event_log: list[dict] = []
        self.latencies_s: list[float] = []
        self.cycle_log: list[str] | None = [] if log_cycles else None
        self.on_transition: list[Callable[[TransitionRecord], None]] = []
        self._started = False

    def start(self) -> None:
        self.machine.start()
        self._started = True

    def enqueue_event(self, event: Event) -> bool:
        event.t = self.clock.now()
        return self.queue.enqueue(event)

    # -- event drain --------------------------------------------------------

    def drain_events(self, report: CycleReport | None = None) -> TransitionRecord | None:
        """Pop events against the current state until one changes it (at
        most one transition per drain) or the queue runs dry."""
        if not self._started:
            raise NotInitialized("start() the coordinator before running cycles")
        budget = self.cfg.max_events_per_cycle or float("inf")
        while budget > 0:
            event = self.queue.pop()
            if event is None:
                return None
            budget -= 1
            if report is not None:
                report.popped_events.append(event.name)
            if self._is_stale(event):
                self.event_log.append({"t": self.clock.now(), "event": event.name,
                                       "outcome": "stale"})
                continue
            src = self.machine.state
            dst, transitioned = dispatch(src, event, self.machine.table)
            if not transitioned:
                self.event_log.append({"t": self.clock.now(), "event": event.name,
                                       "outcome": "absorbed", "state": src})
                continue
            self.machine.apply_transition(dst)
            if event.wall_t:
                self.latencies_s.append(time.perf_counter() - event.wall_t)
            record = TransitionRecord(self.cycle_count, self.clock.now(), src, event.name, dst)
            self.transitions.append(record)
            self.event_log.append({"t": self.clock.now(), "event": event.name,
                                   "outcome": "transition", "from": src, "to": dst})
            for cb in self.on_transition:
                cb(record)
            if report is not None:
                report.transition = {"from": src, "event": event.name, "to": dst}
            return record
        return None

    def _is_stale(self, event: Event) -> bool:
        # A BT status produced by a tree we already left must not drive the
        # new state's transitions.
        return (
            event.name in (BT_SUCCESS, BT_FAILURE)
            and event.origin_state is not None
            and event.origin_state != self.machine.state
        )

    # -- main cycle -----------------------------------------------------------

    def run_cycle(self) -> CycleReport:
        if not self._started:
            raise NotInitialized("start() the coordinator before running cycles")
        report = CycleReport(self.cycle_count, self.clock.now(), self.machine.state)
        self.drain_events(report)
        report.state = self.machine.state

        if self.paused:
            if self._hold_command is not None:
                self._hold_command()
        elif not self.machine.in_final:
            status = self.machine.tick_active(self.clock)
            if status is not None:
                report.root_status = status.value
                if status is NodeStatus.SUCCESS:
                    self.enqueue_event(Event.internal(BT_SUCCESS, origin_state=self.machine.state))
                elif status is NodeStatus.FAILURE:
                    self.enqueue_event(Event.internal(BT_FAILURE, origin_state=self.machine.state))

        self.cycle_count += 1
        if self.cycle_log is not None:
            self.cycle_log.append(report.to_json())
        return report

    # -- tree lifecycle commands ------------------------------------------------

    def bt_lifecycle(self, command: str) -> None:
        tree = self.machine.active_tree()
        if tree is None:
            raise NoActiveTree(self.machine.state)
        if command == "pause":
            self.paused = True
        elif command == "execute":
            self.paused = False
        elif command == "abort":
            tree.halt()
            self.enqueue_event(Event.internal(BT_FAILURE, origin_state=self.machine.state))
        elif command == "reset":
            from .bt.nodes import Lifecycle

            if not self.paused and not tree.halted and tree.root.lifecycle is Lifecycle.RUNNING:
                raise ResetWhileRunning("pause or abort before resetting the active tree")
            if tree.root.lifecycle is Lifecycle.RUNNING:
                tree.halt()
            tree.reset()
        else:
            raise CoordinatorError(f"unknown lifecycle command {command!r}")


class RealTimeDriver:
    """Paces the coordinator at the configured tick period against the wall
    clock, waking early when an event arrives so the transition lands well
    inside the latency budget instead of waiting out the current period."""

    def __init__(self, coordinator: Coordinator, step_hook: Callable[[], None] | None = None):
        self.coordinator = coordinator
        self.step_hook = step_hook
        self.cycle_periods: list[float] = []

    def run(self, duration_s: float) -> None:
        period = self.coordinator.cfg.tick_period
        start = time.perf_counter()
        next_tick = start + period
        last_cycle = None
        deadline = start + duration_s
        while True:
            now = time.perf_counter()
            if now >= deadline:
                return
            if now < next_tick:
                woke = self.coordinator.queue.wait_for_event(min(next_tick - now, deadline - now))
                if woke:
                    self.coordinator.drain_events()
                continue
            t_cycle = time.perf_counter()
            if last_cycle is not None:
                self.cycle_periods.append(t_cycle - last_cycle)
            last_cycle = t_cycle
            self.coordinator.run_cycle()
            if self.step_hook is not None:
                self.step_hook()
            next_tick += period
            # Don't try to catch up after a long stall; re-anchor instead.
            if next_tick < time.perf_counter() - period:
                next_tick = time.perf_counter() + period
