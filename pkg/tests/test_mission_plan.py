"""Plan parsing, validation, cursor, and the parameter server."""

import json

import pytest

from aeroexec.mission_plan import (
    FRESH_CURSOR,
    InvalidCursor,
    ParameterServer,
    PlanSyntaxError,
    SchemaError,
    UnknownParameter,
    UnsupportedVersion,
    VehicleLimits,
    cursor_next,
    parse_plan,
    validate_plan,
)

MINIMAL = {
    "version": "1",
    "frame": "local_enu",
    "cruise_altitude": 10.0,
    "waypoints": [{"id": "wp0", "position": [0, 0, 10]}],
}


def fig1_style():
    return {
        "version": "1",
        "frame": "local_enu",
        "cruise_altitude": 10.0,
        "waypoints": [
            {"id": "takeoff", "position": [0, 0, 10]},
            {"id": "sci1", "position": [80, 0, 10],
             "tasks": [{"kind": "Science", "params": {"duration_s": 4, "label": "outcrop"}}]},
            {"id": "lss1", "position": [80, 80, 10],
             "tasks": [{"kind": "LandingSiteSearch",
                        "params": {"extent_m": 30, "min_confidence": 0.6}}]},
            {"id": "sci2", "position": [0, 80, 10],
             "tasks": [{"kind": "Science", "params": {"duration_s": 3, "label": "ridge"}}]},
        ],
    }


def test_minimal_plan_parses():
    plan = parse_plan(json.dumps(MINIMAL))
    assert len(plan.waypoints) == 1
    wp, cursor = cursor_next(plan, FRESH_CURSOR)
    assert wp.id == "wp0" and cursor == 1


def test_task_order_preserved_per_waypoint_order():
    plan = parse_plan(fig1_style())
    kinds = [(wp.id, [t.kind.value for t in wp.tasks]) for wp in plan.waypoints]
    assert kinds == [("takeoff", []), ("sci1", ["Science"]),
                     ("lss1", ["LandingSiteSearch"]), ("sci2", ["Science"])]


def test_missing_position_reports_exact_path():
    doc = dict(MINIMAL)
    doc["waypoints"] = [{"id": "a", "position": [0, 0, 10]}, {"id": "b"}]
    with pytest.raises(SchemaError) as err:
        parse_plan(doc)
    assert err.value.path == "waypoints[1].position"


def test_syntax_error():
    with pytest.raises(PlanSyntaxError):
        parse_plan(b"{nope")


def test_unsupported_version():
    doc = dict(MINIMAL)
    doc["version"] = "99"
    with pytest.raises(UnsupportedVersion):
        parse_plan(doc)


def test_duplicate_waypoint_ids_rejected():
    doc = dict(MINIMAL)
    doc["waypoints"] = [{"id": "a", "position": [0, 0, 1]},
                        {"id": "a", "position": [1, 0, 1]}]
    with pytest.raises(SchemaError):
        parse_plan(doc)


def test_parse_serialize_roundtrip():
    plan = parse_plan(fig1_style())
    again = parse_plan(plan.serialize())
    assert again == plan


def test_polyline_length_against_independent_sum():
    plan = parse_plan(fig1_style())
    # Independent length computation, straight from coordinates.
    import math

    pts = [wp.position for wp in plan.waypoints]
    expected = sum(math.dist(a, b) for a, b in zip(pts, pts[1:]))
    assert plan.total_length() == pytest.approx(expected)
    assert expected == pytest.approx(240.0)


def test_validate_plan_passes_within_limits():
    plan = parse_plan(fig1_style())
    report = validate_plan(plan, VehicleLimits(max_path_length_m=1200))
    assert report.passed


def test_validate_flags_zero_length_leg():
    doc = dict(MINIMAL)
    doc["waypoints"] = [{"id": "a", "position": [5, 5, 10]},
                        {"id": "b", "position": [5, 5, 10]}]
    report = validate_plan(parse_plan(doc))
    assert any("zero-length" in v for v in report.violations)


def test_validate_flags_excess_length():
    doc = dict(MINIMAL)
    doc["waypoints"] = [{"id": "a", "position": [0, 0, 10]},
                        {"id": "b", "position": [1500, 0, 10]}]
    report = validate_plan(parse_plan(doc), VehicleLimits(max_path_length_m=1200))
    assert any("exceeds limit" in v for v in report.violations)


def test_validate_monotone_under_waypoint_addition():
    doc = dict(MINIMAL)
    doc["waypoints"] = [{"id": "a", "position": [0, 0, 10]},
                        {"id": "b", "position": [1500, 0, 10]}]
    base = validate_plan(parse_plan(doc))
    doc["waypoints"].append({"id": "c", "position": [1500, 300, 10]})
    grown = validate_plan(parse_plan(doc))
    assert set(base.codes) <= set(grown.codes)


def test_cursor_walks_plan_and_survives_serialization():
    plan = parse_plan(fig1_style())
    visited = []
    cursor = FRESH_CURSOR
    while True:
        wp, cursor = cursor_next(plan, cursor)
        if wp is None:
            break
        visited.append(wp.id)
        cursor = json.loads(json.dumps(cursor))  # round-trip mid-walk
    assert visited == ["takeoff", "sci1", "lss1", "sci2"]


def test_cursor_done_at_end():
    plan = parse_plan(json.dumps(MINIMAL))
    _, cursor = cursor_next(plan, 0)
    wp, again = cursor_next(plan, cursor)
    assert wp is None and again == cursor


def test_invalid_cursor():
    plan = parse_plan(json.dumps(MINIMAL))
    with pytest.raises(InvalidCursor):
        cursor_next(plan, -1)
    with pytest.raises(InvalidCursor):
        cursor_next(plan, 99)


def test_parameter_server_namespacing_and_errors():
    params = ParameterServer({"vehicle": {"v_max": 3.0, "nested": {"deep": 1}},
                              "flat": "x"})
    assert params.get("vehicle.v_max") == 3.0
    assert params.get("vehicle.nested.deep") == 1
    assert params.get("flat") == "x"
    with pytest.raises(UnknownParameter):
        params.get("vehicle.nope")
    view = params.view("vehicle")
    assert view.get_float("v_max") == 3.0
    with pytest.raises(TypeError):
        ParameterServer({"s": "text"}).get_float("s")
