"""Pure geometric helpers used by the landing flow: takeoff timeout
budgeting, landing site selection and lawnmower search pattern generation.
"""

from __future__ import annotations

import math

from dataclasses import dataclass

from ..bt.blackboard import register_blackboard_type
from ..vec import Vec3, dist


class GeometryError(Exception):
    pass


class NonPositiveSpeed(GeometryError):
    pass


class BadGeometry(GeometryError):
    pass


@dataclass(frozen=True)
class LandingSite:
    position: Vec3
    confidence: float
    radius: float
    detected_at: float

    def __post_init__(self) -> None:
        if not 0.0 <= self.confidence <= 1.0:
            raise BadGeometry(f"confidence must be in [0, 1], got {self.confidence}")
        if self.radius <= 0:
            raise BadGeometry(f"radius must be > 0, got {self.radius}")

    def to_dict(self) -> dict:
        return {"position": list(self.position), "confidence": self.confidence,
                "radius": self.radius, "detected_at": self.detected_at}


register_blackboard_type(LandingSite)


@dataclass(frozen=True)
class SearchPattern:
    waypoints: tuple[Vec3, ...]
    altitude: float
    leg_spacing: float


def compute_takeoff_timeout(
    distance: float, ascent_speed: float, margin_factor: float = 2.0, floor: float = 5.0
) -> float:
    """Time budget for a climb: the ideal time scaled by a safety margin,
    never below the floor."""
    if ascent_speed <= 0:
        raise NonPositiveSpeed(f"ascent speed must be > 0, got {ascent_speed}")
    if distance < 0:
        raise BadGeometry(f"distance must be >= 0, got {distance}")
    if margin_factor < 1:
        raise BadGeometry(f"margin factor must be >= 1, got {margin_factor}")
    if floor <= 0:
        raise BadGeometry(f"floor must be > 0, got {floor}")
    return max(floor, margin_factor * distance / ascent_speed + floor)


def select_landing_site(
    sites: list[LandingSite],
    vehicle_pos: Vec3,
    policy: str = "closest",
    min_confidence: float = 0.6,
) -> LandingSite | None:
    """Pick a site among those meeting the confidence bar; None means a
    search is needed.

    closest: minimum Euclidean distance, ties to higher confidence then
    lexicographic position. most_confident: maximum confidence, ties to
    smaller distance. Both orders are total, so the choice is invariant
    under permutation of the input.
    """
    eligible = [s for s in sites if s.confidence >= min_confidence]
    if not eligible:
        return None
    if policy == "closest":
        return min(eligible, key=lambda s: (dist(s.position, vehicle_pos),
                                            -s.confidence, s.position))
    if policy == "most_confident":
        return max(eligible, key=lambda s: (s.confidence,
                                            -dist(s.position, vehicle_pos),
                                            tuple(-c for c in s.position)))
    raise GeometryError(f"unknown selection policy {policy!r}")


def generate_search_pattern(
    center: Vec3, extent: float, leg_spacing: float, altitude: float
) -> SearchPattern:
    """Boustrophedon sweep over the square of side `extent` centered at
    `center`, flown at `altitude`. Legs run along y, stepping in x; every
    point of the square ends up within leg_spacing/2 of the path.

    Waypoint count is (ceil(extent / leg_spacing) + 1) * 2 (two endpoints
    per leg, serpentine order): legs sit on both edges of the square with
    at most leg_spacing between neighbors, so coverage holds even when the
    extent is not an exact multiple of the spacing. A square no wider than
    the spacing needs just one center leg.
    """
    if extent <= 0 or leg_spacing <= 0 or altitude <= 0:
        raise BadGeometry(
            f"extent, leg_spacing and altitude must be > 0, got "
            f"{extent}/{leg_spacing}/{altitude}"
        )
    half = extent / 2.0
    cx, cy = center[0], center[1]
    if extent <= leg_spacing:
        xs = [cx]
    else:
        n_legs = math.ceil(extent / leg_spacing) + 1
        xs = [cx - half + i * (extent / (n_legs - 1)) for i in range(n_legs)]
    waypoints: list[Vec3] = []
    for i, x in enumerate(xs):
        y0, y1 = (cy - half, cy + half) if i % 2 == 0 else (cy + half, cy - half)
        waypoints.append((x, y0, altitude))
        waypoints.append((x, y1, altitude))
    return SearchPattern(tuple(waypoints), altitude, leg_spacing)
