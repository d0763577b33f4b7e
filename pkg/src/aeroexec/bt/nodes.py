"""Behavior tree node taxonomy and tick semantics.

Control nodes (Sequence, Fallback, Parallel) route execution, decorators
(Retry, Timeout, Inverter) reshape a single child, leaves do the work.
Sequence and Fallback keep memory across ticks: a Running child is resumed,
not restarted, so long actions like a climb-out are ticked to completion
instead of being re-armed every cycle.
"""

from __future__ import annotations

import logging
from enum import Enum
from typing import Any, Callable, Sequence as Seq

log = logging.getLogger(__name__)


class NodeStatus(Enum):
    SUCCESS = "Success"
    FAILURE = "Failure"
    RUNNING = "Running"


class Lifecycle(Enum):
    """Node-internal lifecycle. IDLE means never ticked (or reset); the
    consumer of the root only ever observes the three NodeStatus values."""

    IDLE = "Idle"
    RUNNING = "Running"
    SUCCESS = "Success"
    FAILURE = "Failure"


_STATUS_TO_LIFECYCLE = {
    NodeStatus.SUCCESS: Lifecycle.SUCCESS,
    NodeStatus.FAILURE: Lifecycle.FAILURE,
    NodeStatus.RUNNING: Lifecycle.RUNNING,
}


class LeafImpl:
    """Base for user leaf implementations. One instance per tree node;
    per-activation state should be rebuilt in on_reset()."""

    def execute(self) -> NodeStatus:
        raise NotImplementedError

    def on_reset(self) -> None:
        """Called before the first execute() of each fresh activation."""

    def on_halt(self) -> None:
        """Called when the node is halted while Running."""


class BtNode:
    kind = "abstract"

    def __init__(self, node_id: str, children: Seq["BtNode"] = (), params: dict | None = None):
        self.id = node_id
        self.children: list[BtNode] = list(children)
        self.params: dict = params or {}
        self.skip_flag = False
        self.lifecycle = Lifecycle.IDLE

    # -- tick ---------------------------------------------------------------

    def tick(self, clock) -> NodeStatus:
        if self.skip_flag:
            # Bypassed this tick: counts as Success for the parent, never
            # executes, and the flag clears. A running subtree is halted
            # first so its halt hooks fire.
            self.skip_flag = False
            if self.lifecycle is Lifecycle.RUNNING:
                self.halt()
            self.lifecycle = Lifecycle.SUCCESS
            return NodeStatus.SUCCESS
        if self.lifecycle is not Lifecycle.RUNNING:
            self._on_activate(clock)
        status = self._tick(clock)
        self.lifecycle = _STATUS_TO_LIFECYCLE[status]
        return status

    def _on_activate(self, clock) -> None:
        """Prepare a fresh activation (previous status was terminal/idle)."""

    def _tick(self, clock) -> NodeStatus:
        raise NotImplementedError

    # -- halt / reset --------------------------------------------------------

    def halt(self, collector: list[str] | None = None) -> None:
        """Halt a running subtree, leaf-to-root. No-op unless Running."""
        if self.lifecycle is not Lifecycle.RUNNING:
            return
        for child in self.children:
            child.halt(collector)
        self._on_halt()
        if collector is not None:
            collector.append(self.id)
        self.lifecycle = Lifecycle.IDLE

    def _on_halt(self) -> None:
        pass

    def reset_state(self) -> None:
        """Back to Idle: clears memory cursors, retry counters, timeout
        deadlines and skip flags. Does not touch the blackboard."""
        self.lifecycle = Lifecycle.IDLE
        self.skip_flag = False
        self._on_reset_state()
        for child in self.children:
            child.reset_state()

    def _on_reset_state(self) -> None:
        pass

    def iter_nodes(self):
        yield self
        for child in self.children:
            yield from child.iter_nodes()


class SequenceNode(BtNode):
    kind = "Sequence"

    def __init__(self, node_id: str, children: Seq[BtNode], params: dict | None = None):
        super().__init__(node_id, children, params)
        self._cursor = 0

    def _on_activate(self, clock) -> None:
        self._cursor = 0

    def _tick(self, clock) -> NodeStatus:
        while self._cursor < len(self.children):
            status = self.children[self._cursor].tick(clock)
            if status is NodeStatus.RUNNING:
                return NodeStatus.RUNNING
            if status is NodeStatus.FAILURE:
                return NodeStatus.FAILURE
            self._cursor += 1
        return NodeStatus.SUCCESS

    def _on_reset_state(self) -> None:
        self._cursor = 0


class FallbackNode(BtNode):
    kind = "Fallback"

    def __init__(self, node_id: str, children: Seq[BtNode], params: dict | None = None):
        super().__init__(node_id, children, params)
        self._cursor = 0

    def _on_activate(self, clock) -> None:
        self._cursor = 0

    def _tick(self, clock) -> NodeStatus:
        while self._cursor < len(self.children):
            status = self.children[self._cursor].tick(clock)
            if status is NodeStatus.RUNNING:
                return NodeStatus.RUNNING
            if status is NodeStatus.SUCCESS:
                return NodeStatus.SUCCESS
            self._cursor += 1
        return NodeStatus.FAILURE

    def _on_reset_state(self) -> None:
        self._cursor = 0


class ParallelNode(BtNode):
    """Ticks every child each cycle; succeeds once `success_threshold`
    children have succeeded, fails as soon as that becomes impossible.
    Children that already finished this activation keep their result."""

    kind = "Parallel"

    def __init__(self, node_id: str, children: Seq[BtNode], params: dict | None = None):
        super().__init__(node_id, children, params)
        self.success_threshold = int(self.params.get("success_threshold", len(self.children)))
        self._results: dict[int, NodeStatus] = {}

    def _on_activate(self, clock) -> None:
        self._results = {}

    def _tick(self, clock) -> NodeStatus:
        for i, child in enumerate(self.children):
            if i in self._results:
                continue
            status = child.tick(clock)
            if status is not NodeStatus.RUNNING:
                self._results[i] = status
        succeeded = sum(1 for s in self._results.values() if s is NodeStatus.SUCCESS)
        failed = len(self._results) - succeeded
        if succeeded >= self.success_threshold:
            self._halt_running_children()
            return NodeStatus.SUCCESS
        if failed > len(self.children) - self.success_threshold:
            self._halt_running_children()
            return NodeStatus.FAILURE
        return NodeStatus.RUNNING

    def _halt_running_children(self) -> None:
        for child in self.children:
            child.halt()

    def _on_reset_state(self) -> None:
        self._results = {}


class RetryNode(BtNode):
    """Re-ticks its child on Failure, within the same tick, up to
    max_attempts total attempts."""

    kind = "Retry"

    def __init__(self, node_id: str, children: Seq[BtNode], params: dict | None = None):
        super().__init__(node_id, children, params)
        self.max_attempts = int(self.params["max_attempts"])
        self._attempts = 0

    def _on_activate(self, clock) -> None:
        self._attempts = 0

    def _tick(self, clock) -> NodeStatus:
        child = self.children[0]
        while True:
            status = child.tick(clock)
            if status is not NodeStatus.FAILURE:
                return status
            self._attempts += 1
            if self._attempts >= self.max_attempts:
                return NodeStatus.FAILURE

    def _on_reset_state(self) -> None:
        self._attempts = 0


class TimeoutNode(BtNode):
    """Fails (and halts) a still-Running child once the elapsed time since
    the child first ran reaches the budget. The budget is either a fixed
    duration or a callback evaluated at child start."""

    kind = "Timeout"

    def __init__(
        self,
        node_id: str,
        children: Seq[BtNode],
        params: dict | None = None,
        duration_fn: Callable[[], float] | None = None,
    ):
        super().__init__(node_id, children, params)
        self._duration_fn = duration_fn
        self._fixed = self.params.get("duration_s")
        self._start: float | None = None
        self._budget: float | None = None

    def _on_activate(self, clock) -> None:
        self._start = clock.now()
        self._budget = float(self._duration_fn() if self._duration_fn else self._fixed)

    def _tick(self, clock) -> NodeStatus:
        child = self.children[0]
        if child.lifecycle is Lifecycle.RUNNING and clock.now() - self._start >= self._budget:
            child.halt()
            return NodeStatus.FAILURE
        return child.tick(clock)

    def _on_reset_state(self) -> None:
        self._start = None
        self._budget = None


class InverterNode(BtNode):
    kind = "Inverter"

    def _tick(self, clock) -> NodeStatus:
        status = self.children[0].tick(clock)
        if status is NodeStatus.SUCCESS:
            return NodeStatus.FAILURE
        if status is NodeStatus.FAILURE:
            return NodeStatus.SUCCESS
        return NodeStatus.RUNNING


class LeafNode(BtNode):
    """Action or Condition wrapping a user LeafImpl. A fault inside the
    leaf is contained: it logs and reports Failure, never crashes the tick."""

    def __init__(self, node_id: str, impl: LeafImpl, params: dict | None = None, label: str = ""):
        super().__init__(node_id, (), params)
        self.impl = impl
        self.label = label or node_id

    def _on_activate(self, clock) -> None:
        try:
            self.impl.on_reset()
        except Exception:
            log.exception("leaf %s on_reset raised", self.id)

    def _tick(self, clock) -> NodeStatus:
        try:
            status = self.impl.execute()
        except Exception:
            log.exception("leaf %s raised during execute; reporting Failure", self.id)
            return NodeStatus.FAILURE
        if not isinstance(status, NodeStatus):
            log.error("leaf %s returned %r instead of a NodeStatus", self.id, status)
            return NodeStatus.FAILURE
        return status

    def _on_halt(self) -> None:
        try:
            self.impl.on_halt()
        except Exception:
            log.exception("leaf %s on_halt raised", self.id)


class ActionNode(LeafNode):
    kind = "Action"


class ConditionNode(LeafNode):
    kind = "Condition"


CONTROL_KINDS = {"Sequence", "Fallback", "Parallel"}
DECORATOR_KINDS = {"Retry", "Timeout", "Inverter"}
LEAF_KINDS = {"Action", "Condition"}
ALL_KINDS = CONTROL_KINDS | DECORATOR_KINDS | LEAF_KINDS
