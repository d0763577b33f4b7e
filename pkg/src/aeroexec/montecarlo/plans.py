"""Seeded random mission plan generation for campaign trials."""

from __future__ import annotations

import math
import random

from ..mission_plan import MissionPlan, Task, TaskKind, Waypoint


def generate_mission_plan(
    rng: random.Random,
    n_waypoints: int,
    target_distance: float,
    cruise_altitude: float = 10.0,
    science_p: float = 0.25,
    search_p: float = 0.15,
) -> MissionPlan:
    """Random-walk polyline with exactly `target_distance` meters of path
    length across `n_waypoints` waypoints, tasks sprinkled along the way."""
    if n_waypoints < 2:
        raise ValueError("need at least two waypoints")
    heading = rng.uniform(0.0, 2.0 * math.pi)
    base_leg = target_distance / (n_waypoints - 1)
    points = [(0.0, 0.0)]
    for _ in range(n_waypoints - 1):
        heading += rng.uniform(-math.pi / 3.0, math.pi / 3.0)
        leg = base_leg * rng.uniform(0.7, 1.3)
        x, y = points[-1]
        points.append((x + leg * math.cos(heading), y + leg * math.sin(heading)))

    length = sum(
        math.hypot(b[0] - a[0], b[1] - a[1]) for a, b in zip(points, points[1:])
    )
    k = target_distance / length if length > 0 else 1.0
    points = [(x * k, y * k) for x, y in points]

    waypoints = []
    for i, (x, y) in enumerate(points):
        tasks: list[Task] = []
        if 0 < i < n_waypoints - 1:
            roll = rng.random()
            if roll < science_p:
                tasks.append(Task(TaskKind.SCIENCE, {
                    "duration_s": round(rng.uniform(2.0, 5.0), 2),
                    "label": f"s{i}",
                }))
            elif roll < science_p + search_p:
                tasks.append(Task(TaskKind.LANDING_SITE_SEARCH, {
                    "extent_m": 30.0,
                    "min_confidence": 0.6,
                }))
        waypoints.append(Waypoint(f"wp{i}", (x, y, cruise_altitude), None, tuple(tasks)))
    return MissionPlan("1", "local_enu", cruise_altitude, tuple(waypoints))


def replay_plan() -> MissionPlan:
    """The fixed plan used for event-replay campaigns: a short square with
    one science stop and one landing-site search."""
    return MissionPlan(
        "1",
        "local_enu",
        10.0,
        (
            Waypoint("wp0", (0.0, 0.0, 10.0)),
            Waypoint("wp1", (60.0, 0.0, 10.0),
                     tasks=(Task(TaskKind.SCIENCE, {"duration_s": 3.0, "label": "siteA"}),)),
            Waypoint("wp2", (60.0, 60.0, 10.0),
                     tasks=(Task(TaskKind.LANDING_SITE_SEARCH,
                                 {"extent_m": 30.0, "min_confidence": 0.6}),)),
            Waypoint("wp3", (0.0, 60.0, 10.0)),
            Waypoint("wp4", (0.0, 10.0, 10.0)),
        ),
    )
