from .context import BehaviorContext
from .geometry import (
    BadGeometry,
    GeometryError,
    LandingSite,
    NonPositiveSpeed,
    SearchPattern,
    compute_takeoff_timeout,
    generate_search_pattern,
    select_landing_site,
)
from .leaves import DEFAULTS, build_registry, takeoff_timeout
from .trees import NoTreeForState, build_state_tree

__all__ = [
    "BadGeometry",
    "BehaviorContext",
    "DEFAULTS",
    "GeometryError",
    "LandingSite",
    "NoTreeForState",
    "NonPositiveSpeed",
    "SearchPattern",
    "build_registry",
    "build_state_tree",
    "compute_takeoff_timeout",
    "generate_search_pattern",
    "select_landing_site",
    "takeoff_timeout",
]
