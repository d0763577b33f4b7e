"""Health monitor: turns continuous vehicle telemetry into the discrete
external events the mission executive reacts to.

Each monitored condition must hold for `debounce_n` consecutive samples
before its event fires, and the event latches until the signal recovers
past threshold + hysteresis, so a value chattering around a threshold
produces at most one event per excursion. Battery severities escalate
independently: a latched BatteryLow never suppresses BatteryCritical.

The monitor only emits events; it never commands the vehicle.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Callable

from .fsm.events import (
    BATTERY_CRITICAL,
    BATTERY_LOW,
    EMERGENCY_BATTERY,
    NO_LANDING_SITES,
    STATE_ESTIMATOR_FAILURE,
    Event,
)


class HealthguardError(Exception):
    pass


class BadThresholdOrder(HealthguardError):
    pass


class NonMonotonicTimestamp(HealthguardError):
    pass


@dataclass(frozen=True)
class HealthSample:
    timestamp: float
    battery_fraction: float
    battery_voltage: float
    estimator_confidence: float
    actuators_ok: bool
    landing_sites_cached: int


@dataclass
class ThresholdConfig:
    battery_low: float = 0.30
    battery_critical: float = 0.15
    battery_emergency: float = 0.07
    estimator_floor: float = 0.30
    debounce_n: int = 3
    hysteresis: float = 0.02

    def validate(self) -> None:
        if not (0.0 < self.battery_emergency < self.battery_critical < self.battery_low < 1.0):
            raise BadThresholdOrder(
                "need 0 < battery_emergency < battery_critical < battery_low < 1, got "
                f"{self.battery_emergency}/{self.battery_critical}/{self.battery_low}"
            )
        if self.debounce_n < 1:
            raise BadThresholdOrder("debounce_n must be >= 1")
        if self.hysteresis < 0:
            raise BadThresholdOrder("hysteresis must be >= 0")


@dataclass
class _Monitor:
    event_name: str
    violated: Callable[[HealthSample], bool]
    recovered: Callable[[HealthSample], bool]
    trigger_value: Callable[[HealthSample], float]
    streak: int = 0
    latched: bool = False


class Healthguard:
    def __init__(self, cfg: ThresholdConfig | None = None):
        self.cfg = ThresholdConfig()
        self._monitors: list[_Monitor] = []
        self._last_ts: float | None = None
        self._site_required = False
        self.enabled = True
        self.event_log: list[dict] = []
        self.configure(cfg or ThresholdConfig())

    def configure(self, cfg: ThresholdConfig) -> None:
        """Install new thresholds. Latches and streaks reset, so the next
        in-range sample cannot produce a spurious emission."""
        cfg.validate()
        self.cfg = cfg
        c = cfg
        self._monitors = [
            _Monitor(
                BATTERY_LOW,
                lambda s, thr=c.battery_low: s.battery_fraction < thr,
                lambda s, thr=c.battery_low: s.battery_fraction > thr + c.hysteresis,
                lambda s: s.battery_fraction,
            ),
            _Monitor(
                BATTERY_CRITICAL,
                lambda s, thr=c.battery_critical: s.battery_fraction < thr,
                lambda s, thr=c.battery_critical: s.battery_fraction > thr + c.hysteresis,
                lambda s: s.battery_fraction,
            ),
            _Monitor(
                EMERGENCY_BATTERY,
                lambda s, thr=c.battery_emergency: s.battery_fraction < thr,
                lambda s, thr=c.battery_emergency: s.battery_fraction > thr + c.hysteresis,
                lambda s: s.battery_fraction,
            ),
            _Monitor(
                STATE_ESTIMATOR_FAILURE,
                lambda s: s.estimator_confidence < c.estimator_floor,
                lambda s: s.estimator_confidence > c.estimator_floor + c.hysteresis,
                lambda s: s.estimator_confidence,
            ),
            _Monitor(
                NO_LANDING_SITES,
                lambda s: self._site_required and s.landing_sites_cached == 0,
                lambda s: s.landing_sites_cached >= 1 or not self._site_required,
                lambda s: float(s.landing_sites_cached),
            ),
        ]

    def set_site_required(self, required: bool) -> None:
        """Arms the no-landing-sites monitor; only meaningful while the
        mission actually depends on a cached site."""
        self._site_required = required

    def ingest(self, sample: HealthSample) -> list[Event]:
        if self._last_ts is not None and sample.timestamp <= self._last_ts:
            raise NonMonotonicTimestamp(
                f"sample at {sample.timestamp} after {self._last_ts}"
            )
        self._last_ts = sample.timestamp
        if not self.enabled:
            return []
        emitted: list[Event] = []
        for mon in self._monitors:
            if mon.violated(sample):
                mon.streak += 1
                if not mon.latched and mon.streak >= self.cfg.debounce_n:
                    mon.latched = True
                    event = Event.external(mon.event_name,
                                           trigger_value=mon.trigger_value(sample))
                    event.t = sample.timestamp
                    emitted.append(event)
                    self.event_log.append({
                        "t": sample.timestamp,
                        "event": mon.event_name,
                        "trigger_value": mon.trigger_value(sample),
                    })
            else:
                mon.streak = 0
                if mon.latched and mon.recovered(sample):
                    mon.latched = False
        return emitted


# -- detection accuracy ---------------------------------------------------------


@dataclass
class DetectionReport:
    true_positive_rate: float
    false_positive_rate: float
    mean_latency: float
    detected: int = 0
    injected: int = 0
    false_positives: int = 0


def measure_accuracy(
    injected: list[tuple[float, str]],
    emitted: list[tuple[float, str]],
    tolerance: float,
) -> DetectionReport:
    """Score an emitted event log against a ground-truth fault schedule.

    An injected fault counts as detected if a same-named event fires within
    `tolerance` seconds after it; each emission matches at most one fault.
    Emissions matching no fault are false positives.
    """
    remaining = sorted(emitted)
    matched: list[float] = []
    detected = 0
    for t_inj, name in sorted(injected):
        hit = None
        for i, (t_emit, emit_name) in enumerate(remaining):
            if emit_name != name:
                continue
            if t_inj <= t_emit <= t_inj + tolerance:
                hit = i
                break
            if t_emit > t_inj + tolerance:
                break
        if hit is not None:
            t_emit, _ = remaining.pop(hit)
            matched.append(t_emit - t_inj)
            detected += 1
    false_positives = len(remaining)
    n_injected = len(injected)
    tpr = detected / n_injected if n_injected else 1.0
    fpr = false_positives / len(emitted) if emitted else 0.0
    mean_latency = sum(matched) / len(matched) if matched else 0.0
    return DetectionReport(tpr, fpr, mean_latency, detected, n_injected, false_positives)
