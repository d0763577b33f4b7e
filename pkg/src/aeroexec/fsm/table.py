"""State transition table: a deterministic map (state, event) -> state with
a self-transition default, plus the offline validator that proves every
state is reachable and can still reach a final state.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from typing import Any, Iterable

from . import events as ev
from .states import MissionState


class TableError(Exception):
    pass


@dataclass(frozen=True)
class Row:
    to: str
    reenter: bool = False


@dataclass
class TransitionTable:
    initial: str
    finals: set[str]
    rows: dict[tuple[str, str], Row] = field(default_factory=dict)
    extra_states: set[str] = field(default_factory=set)

    def add(self, src: str, event: str, dst: str, reenter: bool = False) -> "TransitionTable":
        self.rows[(src, event)] = Row(dst, reenter)
        return self

    @property
    def states(self) -> set[str]:
        out = {self.initial, *self.finals, *self.extra_states}
        for (src, _), row in self.rows.items():
            out.add(src)
            out.add(row.to)
        return out

    def is_final(self, state: str) -> bool:
        return state in self.finals

    # -- serialization ---------------------------------------------------------

    @classmethod
    def from_dict(cls, doc: dict) -> "TransitionTable":
        try:
            initial = doc["initial"]
            finals = set(doc["final"])
        except KeyError as e:
            raise TableError(f"table document missing field {e}") from None
        if not finals:
            raise TableError("table needs at least one final state")
        table = cls(initial=initial, finals=finals)
        for i, row in enumerate(doc.get("rows", [])):
            try:
                table.add(row["from"], row["event"], row["to"], bool(row.get("reenter", False)))
            except KeyError as e:
                raise TableError(f"rows[{i}] missing field {e}") from None
        return table

    @classmethod
    def from_json(cls, text: str | bytes) -> "TransitionTable":
        try:
            doc = json.loads(text)
        except json.JSONDecodeError as e:
            raise TableError(f"invalid JSON: {e}") from None
        return cls.from_dict(doc)

    def to_dict(self) -> dict:
        return {
            "initial": self.initial,
            "final": sorted(self.finals),
            "rows": [
                {"from": src, "event": event, "to": row.to,
                 **({"reenter": True} if row.reenter else {})}
                for (src, event), row in sorted(self.rows.items())
            ],
        }


def dispatch(current: str, event: Any, table: TransitionTable) -> tuple[str, bool]:
    """Pure lookup: the row's target if one matches, else a self-transition.

    The boolean reports whether the machine actually performs an exit/enter
    cycle: True for a state change or an explicit re-enter row, False when
    the event is absorbed (no row, or a plain self-row).
    """
    name = getattr(event, "name", event)
    current = getattr(current, "value", current)
    row = table.rows.get((current, name))
    if row is None:
        return current, False
    if row.to == current and not row.reenter:
        return current, False
    return row.to, True


@dataclass
class TableValidationReport:
    unreachable: list[str]
    no_final_path: list[str]

    @property
    def passed(self) -> bool:
        return not self.unreachable and not self.no_final_path

    def as_text(self) -> str:
        lines = [f"verdict: {'PASS' if self.passed else 'FAIL'}"]
        lines.append(f"unreachable: {', '.join(self.unreachable) or '(none)'}")
        lines.append(f"no path to final: {', '.join(self.no_final_path) or '(none)'}")
        return "\n".join(lines)


def validate_table(table: TransitionTable, initial: str | None = None) -> TableValidationReport:
    """Offline check that must pass before the machine runs: every state is
    reachable from the initial state via non-self rows, and every state has
    some event path to a final state."""
    initial = initial or table.initial
    states = table.states

    # Forward reachability over rows that actually move.
    succ: dict[str, set[str]] = {s: set() for s in states}
    for (src, _), row in table.rows.items():
        if row.to != src:
            succ.setdefault(src, set()).add(row.to)
    reached = _bfs({initial}, succ)
    unreachable = sorted(states - reached)

    # Reverse reachability from the finals.
    pred: dict[str, set[str]] = {s: set() for s in states}
    for (src, _), row in table.rows.items():
        if row.to != src:
            pred.setdefault(row.to, set()).add(src)
    terminating = _bfs(set(table.finals), pred)
    no_final_path = sorted(states - terminating)

    return TableValidationReport(unreachable, no_final_path)


def _bfs(start: set[str], edges: dict[str, set[str]]) -> set[str]:
    seen = set(start)
    frontier = list(start)
    while frontier:
        node = frontier.pop()
        for nxt in edges.get(node, ()):
            if nxt not in seen:
                seen.add(nxt)
                frontier.append(nxt)
    return seen


def canonical_table() -> TransitionTable:
    """The default mission table.

    Success walks the nominal chain; failure escalates to EmergencyLand
    once airborne (and straight to Terminate from the ground phases, where
    aborting is safe). Battery and estimator events map toward whichever
    landing flow the severity allows. Unmatched events self-absorb.
    """
    S = MissionState
    t = TransitionTable(initial=S.IDLE.value, finals={S.TERMINATE.value})

    t.add(S.IDLE.value, ev.START, S.INIT.value)

    chain = [S.INIT, S.PRECHECKS, S.TAKEOFF, S.MISSION, S.LAND]
    nxt = {S.INIT: S.PRECHECKS, S.PRECHECKS: S.TAKEOFF, S.TAKEOFF: S.MISSION,
           S.MISSION: S.LAND, S.LAND: S.TERMINATE}
    for src in chain:
        t.add(src.value, ev.BT_SUCCESS, nxt[src].value)
    t.add(S.EMERGENCY_LAND.value, ev.BT_SUCCESS, S.TERMINATE.value)

    t.add(S.INIT.value, ev.BT_FAILURE, S.TERMINATE.value)
    t.add(S.PRECHECKS.value, ev.BT_FAILURE, S.TERMINATE.value)
    for src in (S.TAKEOFF, S.MISSION, S.LAND):
        t.add(src.value, ev.BT_FAILURE, S.EMERGENCY_LAND.value)
    t.add(S.EMERGENCY_LAND.value, ev.BT_FAILURE, S.TERMINATE.value)

    t.add(S.TAKEOFF.value, ev.BATTERY_LOW, S.LAND.value)
    t.add(S.MISSION.value, ev.BATTERY_LOW, S.LAND.value)
    t.add(S.LAND.value, ev.BATTERY_LOW, S.LAND.value)  # absorbed: already landing

    for name in (ev.BATTERY_CRITICAL, ev.EMERGENCY_BATTERY, ev.STATE_ESTIMATOR_FAILURE):
        for src in (S.INIT, S.PRECHECKS, S.TAKEOFF, S.MISSION, S.LAND):
            t.add(src.value, name, S.EMERGENCY_LAND.value)

    # Re-arm the landing site search from the top of the Land tree.
    t.add(S.LAND.value, ev.NO_LANDING_SITES, S.LAND.value, reenter=True)
    t.add(S.LAND.value, ev.LANDING_SITE_CHECKS, S.EMERGENCY_LAND.value)

    return t
