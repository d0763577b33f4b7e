"""Time sources. Everything that needs time takes one of these instead of
reading the wall clock, so simulations can run faster than real time and
tests stay deterministic."""

from __future__ import annotations

import time


class SimClock:
    """Simulated monotonic clock, advanced explicitly by the harness."""

    def __init__(self, start: float = 0.0):
        self._t = float(start)

    def now(self) -> float:
        return self._t

    def advance(self, dt: float) -> float:
        if dt < 0:
            raise ValueError("clock cannot run backwards")
        self._t += dt
        return self._t


class WallClock:
    """Monotonic wall-time clock for real-time operation."""

    def now(self) -> float:
        return time.monotonic()
