from . import events
from .events import Event, EventSource, resolve_priority
from .machine import BindToFinal, MissionStateMachine, NoActiveTree, StateBinding
from .states import ALL_STATES, NOMINAL_SEQUENCE, MissionState
from .table import (
    Row,
    TableError,
    TableValidationReport,
    TransitionTable,
    canonical_table,
    dispatch,
    validate_table,
)

__all__ = [
    "ALL_STATES",
    "BindToFinal",
    "Event",
    "EventSource",
    "MissionState",
    "MissionStateMachine",
    "NOMINAL_SEQUENCE",
    "NoActiveTree",
    "Row",
    "StateBinding",
    "TableError",
    "TableValidationReport",
    "TransitionTable",
    "canonical_table",
    "dispatch",
    "events",
    "resolve_priority",
    "validate_table",
]
