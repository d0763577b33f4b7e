"""Transition table: dispatch semantics and the offline validator, checked
against an independent breadth-first-search oracle."""

from collections import deque

import pytest
from hypothesis import given, strategies as st

from aeroexec.fsm import canonical_table, dispatch, validate_table
from aeroexec.fsm.states import ALL_STATES
from aeroexec.fsm.table import TransitionTable


# -- independent reachability oracle (written before the validator was run) --


def bfs_reachable(table: TransitionTable, start: str) -> set[str]:
    seen = {start}
    queue = deque([start])
    while queue:
        state = queue.popleft()
        for (src, _event), row in table.rows.items():
            if src == state and row.to != src and row.to not in seen:
                seen.add(row.to)
                queue.append(row.to)
    return seen


def bfs_reaches_final(table: TransitionTable) -> set[str]:
    seen = set(table.finals)
    queue = deque(table.finals)
    while queue:
        state = queue.popleft()
        for (src, _event), row in table.rows.items():
            if row.to == state and src != row.to and src not in seen:
                seen.add(src)
                queue.append(src)
    return seen


def oracle_report(table: TransitionTable) -> tuple[list[str], list[str]]:
    states = table.states
    unreachable = sorted(states - bfs_reachable(table, table.initial))
    no_final = sorted(states - bfs_reaches_final(table))
    return unreachable, no_final


# -- dispatch ---------------------------------------------------------------


def test_mission_success_advances_to_land():
    assert dispatch("Mission", "BtSuccess", canonical_table()) == ("Land", True)


def test_battery_critical_in_mission_goes_emergency():
    assert dispatch("Mission", "BatteryCritical", canonical_table()) == ("EmergencyLand", True)


def test_unmapped_event_self_transition():
    assert dispatch("Takeoff", "Unmapped", canonical_table()) == ("Takeoff", False)


def test_battery_low_in_mission_diverts_to_land():
    assert dispatch("Mission", "BatteryLow", canonical_table()) == ("Land", True)


def test_battery_low_while_landing_absorbed():
    assert dispatch("Land", "BatteryLow", canonical_table()) == ("Land", False)


def test_no_sites_reenters_land():
    next_state, transitioned = dispatch("Land", "NoLandingSitesFound", canonical_table())
    assert (next_state, transitioned) == ("Land", True)  # explicit re-enter row


def test_dispatch_accepts_event_objects():
    from aeroexec.fsm import Event

    assert dispatch("Idle", Event.external("Start"), canonical_table()) == ("Init", True)


@given(state=st.sampled_from(ALL_STATES), event=st.text(min_size=0, max_size=12))
def test_dispatch_total_and_pure(state, event):
    table = canonical_table()
    first = dispatch(state, event, table)
    second = dispatch(state, event, table)
    assert first == second
    assert first[0] in table.states


# -- validator ---------------------------------------------------------------


def test_canonical_table_passes():
    table = canonical_table()
    report = validate_table(table)
    assert report.passed
    assert oracle_report(table) == ([], [])


def test_unreachable_prechecks_detected():
    table = canonical_table()
    # Reroute Init's success straight to Takeoff: nothing enters PreChecks.
    table.add("Init", "BtSuccess", "Takeoff")
    report = validate_table(table)
    unreachable, no_final = oracle_report(table)
    assert not report.passed
    assert report.unreachable == unreachable == ["PreChecks"]
    assert report.no_final_path == no_final == []


def test_emergency_land_without_final_path_detected():
    table = canonical_table()
    del table.rows[("EmergencyLand", "BtSuccess")]
    del table.rows[("EmergencyLand", "BtFailure")]
    report = validate_table(table)
    unreachable, no_final = oracle_report(table)
    assert not report.passed
    assert report.no_final_path == no_final == ["EmergencyLand"]
    assert report.unreachable == unreachable == []


def test_validator_matches_oracle_on_random_tables():
    import random

    rng = random.Random(7)
    states = ["A", "B", "C", "D", "E", "F"]
    events = ["e1", "e2", "e3"]
    for _ in range(300):
        table = TransitionTable(initial="A", finals={rng.choice(states)})
        for _ in range(rng.randint(0, 14)):
            table.add(rng.choice(states), rng.choice(events), rng.choice(states))
        report = validate_table(table)
        assert (report.unreachable, report.no_final_path) == oracle_report(table)


def test_validation_soundness_by_exhaustive_path_search():
    """Any passing table admits, from every state, a finite event sequence
    into a final state; checked by explicit path enumeration."""
    table = canonical_table()
    assert validate_table(table).passed
    for state in table.states:
        frontier = {state}
        seen = set(frontier)
        found = bool(frontier & table.finals)
        for _ in range(len(table.states) + 1):
            if found:
                break
            nxt = set()
            for s in frontier:
                for (src, _event), row in table.rows.items():
                    if src == s and row.to not in seen:
                        nxt.add(row.to)
                        seen.add(row.to)
            found = bool(nxt & table.finals)
            frontier = nxt
        assert found or state in table.finals, f"no final path from {state}"


# -- serialization --------------------------------------------------------------


def test_table_json_roundtrip():
    table = canonical_table()
    doc = table.to_dict()
    clone = TransitionTable.from_dict(doc)
    assert clone.rows == table.rows
    assert clone.initial == table.initial
    assert clone.finals == table.finals


def test_table_document_errors():
    from aeroexec.fsm.table import TableError

    with pytest.raises(TableError):
        TransitionTable.from_dict({"initial": "A", "final": []})
    with pytest.raises(TableError):
        TransitionTable.from_json("not json")
    with pytest.raises(TableError):
        TransitionTable.from_dict({"initial": "A", "final": ["B"],
                                   "rows": [{"from": "A", "to": "B"}]})
