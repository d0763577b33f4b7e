"""Campaign construction, parallel execution and report aggregation.

Two canonical campaigns ship with the tool:

  table1 - 170 trials replaying a fixed per-state health event matrix
           against a fixed plan, one injection per trial;
  fig6   - 100 randomized trials (5-15 waypoints, distance drawn from four
           bins up to 1.2 km) with randomized battery stress, reported as
           outcome counts per distance bin.

Reports are deterministic given the seeds regardless of parallelism:
trials are independent and aggregation sorts by seed.
"""

from __future__ import annotations

import json
import random
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from pathlib import Path

from ..fsm.table import TransitionTable, canonical_table
from .trial import (
    CLASSIFICATIONS,
    CRASH,
    TrialOutcome,
    TrialSpec,
    run_trial,
    verify_trial,
)

# Per-state injection counts for the replay campaign (event rows, state
# columns Init/Takeoff/Mission/Land; 170 trials total).
TABLE1_MATRIX: dict[str, dict[str, int]] = {
    "StateEstimatorFailure": {"Init": 7, "Takeoff": 7, "Mission": 8, "Land": 9},
    "BatteryLow": {"Init": 10, "Takeoff": 8, "Mission": 6, "Land": 9},
    "BatteryCritical": {"Init": 5, "Takeoff": 8, "Mission": 5, "Land": 7},
    "EmergencyBattery": {"Init": 6, "Takeoff": 7, "Mission": 6, "Land": 8},
    "NoLandingSitesFound": {"Init": 5, "Takeoff": 8, "Mission": 5, "Land": 7},
    "LandingSiteChecks": {"Init": 7, "Takeoff": 9, "Mission": 7, "Land": 6},
}
TABLE1_STATES = ["Init", "Takeoff", "Mission", "Land"]

FIG6_BINS: list[tuple[float, float]] = [(200, 500), (501, 800), (801, 1000), (1001, 1200)]
FIG6_BIN_LABELS = ["200-500", "501-800", "801-1000", "1001-1200"]


def build_table1_trials(base_seed: int = 1000, injection_delay: float = 2.0) -> list[TrialSpec]:
    specs = []
    i = 0
    for event, row in TABLE1_MATRIX.items():
        for state in TABLE1_STATES:
            for _ in range(row[state]):
                specs.append(TrialSpec(
                    seed=base_seed + i,
                    injections=[{"event": event, "state": state, "delay": injection_delay}],
                    tag=f"table1:{event}@{state}",
                ))
                i += 1
    return specs


def build_fig6_trials(base_seed: int = 5000, per_bin: int = 25) -> list[TrialSpec]:
    """Randomized stress campaign. Fault onsets are drawn over a fixed
    horizon independent of the plan, so a longer flight is simply exposed
    longer: sharp battery degradations (and occasional estimator dropouts)
    that begin after touchdown never bite, which is what ties the
    emergency landing rate to flight distance."""
    specs = []
    i = 0
    for bin_index, (lo, hi) in enumerate(FIG6_BINS):
        for _ in range(per_bin):
            seed = base_seed + i
            rng = random.Random(seed)
            distance = rng.uniform(lo, hi)
            waypoints = rng.randint(5, 15)
            start_battery = rng.uniform(0.75, 1.0)
            spec = TrialSpec(
                seed=seed,
                plan_waypoints=waypoints,
                plan_distance=round(distance, 1),
                start_battery=round(start_battery, 3),
                tag=f"fig6:bin{bin_index}",
            )
            roll = rng.random()
            if roll < 0.65:
                spec.faults.append({
                    "kind": "battery_drain_multiplier",
                    "start": round(rng.uniform(0.0, 600.0), 1),
                    "factor": round(rng.uniform(3.0, 6.0), 2),
                })
            elif roll < 0.75:
                spec.faults.append({
                    "kind": "estimator_dropout",
                    "start": round(rng.uniform(30.0, 600.0), 1),
                    "duration": 5.0,
                })
            specs.append(spec)
            i += 1
    return specs


def fig6_bin_index(plan_length: float) -> int:
    for i, (lo, hi) in enumerate(FIG6_BINS):
        if lo <= plan_length <= hi:
            return i
    return min(range(len(FIG6_BINS)),
               key=lambda i: min(abs(plan_length - FIG6_BINS[i][0]),
                                 abs(plan_length - FIG6_BINS[i][1])))


@dataclass
class CampaignReport:
    outcomes: list[TrialOutcome]
    verify_failures: list[tuple[int, list[str]]] = field(default_factory=list)

    @property
    def n_trials(self) -> int:
        return len(self.outcomes)

    @property
    def crash_count(self) -> int:
        return sum(1 for o in self.outcomes if o.classification == CRASH)

    @property
    def all_verified(self) -> bool:
        return not self.verify_failures

    def classification_counts(self) -> dict[str, int]:
        counts = {c: 0 for c in CLASSIFICATIONS}
        for o in self.outcomes:
            counts[o.classification] += 1
        return counts

    def table1_counts(self) -> dict[str, dict[str, int]]:
        """Injected event x state-at-injection matrix."""
        counts: dict[str, dict[str, int]] = {}
        for o in self.outcomes:
            for inj in o.injected:
                if "event" not in inj:
                    continue
                row = counts.setdefault(inj["event"], {s: 0 for s in TABLE1_STATES})
                state = inj["state_at_injection"]
                row[state] = row.get(state, 0) + 1
        return counts

    def fig6_counts(self) -> list[dict[str, int]]:
        bins = [{c: 0 for c in CLASSIFICATIONS} for _ in FIG6_BINS]
        for o in self.outcomes:
            bins[fig6_bin_index(o.plan_length)][o.classification] += 1
        return bins

    def exit_code(self) -> int:
        if self.crash_count:
            return 4
        if not self.all_verified:
            return 3
        return 0


def _run_one(args: tuple[dict, dict | None]) -> TrialOutcome:
    spec_doc, base_config = args
    return run_trial(TrialSpec.from_dict(spec_doc), base_config)


def run_campaign(
    specs: list[TrialSpec],
    base_config: dict | None = None,
    jobs: int = 1,
    table: TransitionTable | None = None,
) -> CampaignReport:
    table = table or canonical_table()
    if jobs <= 1:
        outcomes = [run_trial(spec, base_config) for spec in specs]
    else:
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            outcomes = list(pool.map(
                _run_one, [(spec.to_dict(), base_config) for spec in specs],
                chunksize=max(1, len(specs) // (jobs * 4) or 1)))
    outcomes.sort(key=lambda o: o.seed)
    report = CampaignReport(outcomes)
    for outcome in outcomes:
        verdict = verify_trial(outcome, table)
        if not verdict.passed:
            report.verify_failures.append((outcome.seed, verdict.mismatches))
    return report


# -- report artifacts ------------------------------------------------------------


def write_reports(report: CampaignReport, out_dir: str | Path) -> None:
    out = Path(out_dir)
    out.mkdir(parents=True, exist_ok=True)

    with (out / "trials.jsonl").open("w") as fh:
        for outcome in report.outcomes:
            fh.write(json.dumps(outcome.to_dict(), separators=(",", ":")) + "\n")

    table1 = report.table1_counts()
    with (out / "table1.csv").open("w") as fh:
        fh.write("event," + ",".join(TABLE1_STATES) + ",total\n")
        for event in sorted(table1):
            row = table1[event]
            cells = [row.get(s, 0) for s in TABLE1_STATES]
            fh.write(f"{event}," + ",".join(map(str, cells)) + f",{sum(cells)}\n")

    with (out / "fig6.csv").open("w") as fh:
        fh.write("distance_bin," + ",".join(c.lower() for c in CLASSIFICATIONS) + "\n")
        for label, counts in zip(FIG6_BIN_LABELS, report.fig6_counts()):
            fh.write(label + "," + ",".join(str(counts[c]) for c in CLASSIFICATIONS) + "\n")

    summary = {
        "trials": report.n_trials,
        "classifications": report.classification_counts(),
        "crashes": report.crash_count,
        "all_transitions_verified": report.all_verified,
        "verify_failures": [
            {"seed": seed, "mismatches": m} for seed, m in report.verify_failures
        ],
        "exit_code": report.exit_code(),
    }
    (out / "summary.json").write_text(json.dumps(summary, indent=2) + "\n")
