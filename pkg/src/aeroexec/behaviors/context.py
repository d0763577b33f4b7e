"""Execution context handed to every leaf at construction time: the
blackboard, the vehicle session, configuration, the staged plan, the clock
and the two callbacks that bridge leaves back into the executive (event
emission and task completion records)."""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Any, Callable

from ..bt.blackboard import Blackboard
from ..mission_plan import MissionPlan, ParameterServer


@dataclass
class BehaviorContext:
    blackboard: Blackboard
    session: Any                     # ConnectorSession
    params: ParameterServer
    clock: Any
    emit_event: Callable[[str], None] = lambda name: None
    record_task: Callable[[str], None] = lambda label: None
    _plan: MissionPlan | None = None

    def plan(self) -> MissionPlan | None:
        return self._plan

    def set_plan(self, plan: MissionPlan | None) -> None:
        self._plan = plan

    def param(self, key: str, default: Any) -> Any:
        return self.params.get_or(key, default)
