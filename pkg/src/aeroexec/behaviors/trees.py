"""Canonical per-state tree definitions.

These specs are also frozen as golden JSON fixtures in the test tree, so
any change to mission topology shows up in review as a fixture diff.
"""

from __future__ import annotations

from ..fsm.states import MissionState
from ..mission_plan import MissionPlan, TaskKind


class NoTreeForState(Exception):
    """Final states carry no behavior tree."""


def _leaf(kind: str, name: str, **params) -> dict:
    return {"kind": kind, "params": {"name": name, **params}}


def _action(name: str, **params) -> dict:
    return _leaf("Action", name, **params)


def _condition(name: str, **params) -> dict:
    return _leaf("Condition", name, **params)


def takeoff_tree() -> dict:
    """Health gate, then either the nominal mode/arm/climb sequence or the
    descend/land/disarm recovery sequence; the climb carries a dynamically
    budgeted timeout."""
    return {
        "kind": "Sequence",
        "children": [
            _condition("HealthOK"),
            {
                "kind": "Fallback",
                "children": [
                    {
                        "kind": "Sequence",
                        "children": [
                            _action("SetModeOffboard"),
                            _action("Arm"),
                            {
                                "kind": "Timeout",
                                "params": {"duration_fn": "takeoff_timeout"},
                                "children": [_action("AscendTo")],
                            },
                        ],
                    },
                    {
                        "kind": "Sequence",
                        "children": [
                            _action("Descend"),
                            _action("Land"),
                            _action("Disarm"),
                        ],
                    },
                ],
            },
        ],
    }


def land_tree() -> dict:
    """Use a known site or search for one, then approach, final-check and
    touch down; a failed landing sequence raises LandingSiteChecks instead
    of reporting a bare failure."""
    return {
        "kind": "Sequence",
        "children": [
            {
                "kind": "Fallback",
                "children": [
                    _condition("HaveSite"),
                    {
                        "kind": "Sequence",
                        "children": [
                            _action("FlySearchPattern"),
                            _condition("SitesFound"),
                        ],
                    },
                ],
            },
            {
                "kind": "Fallback",
                "children": [
                    {
                        "kind": "Sequence",
                        "children": [
                            _action("GoToSite"),
                            _condition("FinalChecks"),
                            _action("TouchDown"),
                            _action("Disarm"),
                        ],
                    },
                    _action("EmitEvent", event="LandingSiteChecks", result="running"),
                ],
            },
        ],
    }


def emergency_land_tree() -> dict:
    return {
        "kind": "Sequence",
        "children": [
            _action("RapidDescend"),
            _action("TouchDown"),
            _action("Disarm", force=True),
        ],
    }


def init_tree() -> dict:
    return {
        "kind": "Sequence",
        "children": [
            _action("LoadPlan"),
            _action("ConnectVehicle"),
            _action("ZeroOdometry"),
        ],
    }


def prechecks_tree() -> dict:
    return {
        "kind": "Sequence",
        "children": [
            _condition("PlanLoaded"),
            _condition("BatteryAboveMinimum"),
            _condition("EstimatorOK"),
            _condition("HomeRecorded"),
        ],
    }


def idle_tree() -> dict:
    return {"kind": "Sequence", "children": [_action("AwaitStart")]}


def mission_tree(plan: MissionPlan) -> dict:
    """One sequence per waypoint: fly there, then run its tasks in order."""
    waypoints = []
    for i, wp in enumerate(plan.waypoints):
        children = [_action("GoToWaypoint", wp_index=i, wp_id=wp.id)]
        for task in wp.tasks:
            if task.kind is TaskKind.SCIENCE:
                children.append(_action(
                    "ScienceTask",
                    duration_s=task.params["duration_s"],
                    label=task.params.get("label", wp.id),
                ))
            else:
                children.append(_action(
                    "LandingSiteSearchTask",
                    extent_m=task.params.get("extent_m", 40.0),
                    min_confidence=task.params.get("min_confidence", 0.6),
                    label=wp.id,
                ))
        waypoints.append({"kind": "Sequence", "children": children})
    return {"kind": "Sequence", "children": waypoints}


def build_state_tree(state: str, params=None, plan: MissionPlan | None = None) -> dict:
    state = getattr(state, "value", state)
    if state == MissionState.IDLE.value:
        return idle_tree()
    if state == MissionState.INIT.value:
        return init_tree()
    if state == MissionState.PRECHECKS.value:
        return prechecks_tree()
    if state == MissionState.TAKEOFF.value:
        return takeoff_tree()
    if state == MissionState.MISSION.value:
        if plan is None:
            raise NoTreeForState("Mission tree needs a plan")
        return mission_tree(plan)
    if state == MissionState.LAND.value:
        return land_tree()
    if state == MissionState.EMERGENCY_LAND.value:
        return emergency_land_tree()
    raise NoTreeForState(state)
