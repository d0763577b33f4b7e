"""State machine runtime: binds a behavior tree (and enter/exit hooks) to
each non-final state and manages the build/reset/halt lifecycle as the
coordinator moves the mission between phases."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Any, Callable

from ..bt.tree import BehaviorTree
from ..bt.nodes import NodeStatus
from .table import TransitionTable, validate_table


class FsmError(Exception):
    pass


class BindToFinal(FsmError):
    """Final states carry no behavior tree."""


class TableNotValidated(FsmError):
    pass


class NoActiveTree(FsmError):
    pass


Hook = Callable[[], None]
SpecBuilder = Callable[[], dict]


@dataclass
class StateBinding:
    spec_builder: SpecBuilder
    on_enter: Hook | None = None
    on_exit: Hook | None = None


class MissionStateMachine:
    """Holds the current phase, its bound tree, and the transition table.

    All mutation happens on the coordinator loop; `state` is a plain string
    snapshot that other contexts may read freely.
    """

    def __init__(self, table: TransitionTable, tree_builder: Callable[[dict], BehaviorTree]):
        report = validate_table(table)
        if not report.passed:
            raise TableNotValidated(report.as_text())
        self.table = table
        self._build = tree_builder
        self._bindings: dict[str, StateBinding] = {}
        self._trees: dict[str, BehaviorTree] = {}
        self.state: str = table.initial
        self.started = False

    def bind_state(
        self,
        state: str,
        spec: dict | SpecBuilder,
        on_enter: Hook | None = None,
        on_exit: Hook | None = None,
    ) -> None:
        state = getattr(state, "value", state)
        if self.table.is_final(state):
            raise BindToFinal(state)
        if callable(spec):
            builder = spec
        else:
            # Static specs are checked right away so a bad tree fails at
            # configuration time, not mid-flight.
            self._trees[state] = self._build(spec)
            builder = lambda: spec  # noqa: E731
        self._bindings[state] = StateBinding(builder, on_enter, on_exit)

    def start(self) -> None:
        self.state = self.table.initial
        self.started = True
        self._enter(self.state)

    def apply_transition(self, dst: str) -> None:
        """Exit the current state and enter `dst` (which may be the same
        state on an explicit re-enter row)."""
        self._exit(self.state)
        self.state = dst
        self._enter(dst)

    def _enter(self, state: str) -> None:
        binding = self._bindings.get(state)
        if binding is None:
            return
        tree = self._trees.get(state)
        if tree is None:
            tree = self._build(binding.spec_builder())
            self._trees[state] = tree
        else:
            tree.reset()
        if binding.on_enter:
            binding.on_enter()

    def _exit(self, state: str) -> None:
        tree = self._trees.get(state)
        if tree is not None:
            tree.halt()
        binding = self._bindings.get(state)
        if binding and binding.on_exit:
            binding.on_exit()

    @property
    def in_final(self) -> bool:
        return self.table.is_final(self.state)

    def active_tree(self) -> BehaviorTree | None:
        if self.in_final:
            return None
        return self._trees.get(self.state)

    def tick_active(self, clock: Any) -> NodeStatus | None:
        tree = self.active_tree()
        if tree is None:
            return None
        return tree.tick(clock)

    def drop_tree(self, state: str) -> None:
        self._trees.pop(state, None)
