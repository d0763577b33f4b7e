"""Run configuration: one JSON document wires a whole run — plan, plant
constants, health thresholds, loop cadence, fault schedule and (optionally)
a custom transition table.

    {
      "v": 1,
      "plan": "plan.json" | {inline plan},
      "loop": {"tick_period": 0.02},
      "vehicle": {"v_max": 3.0, ...},
      "healthguard": {"battery_low": 0.30, ..., "sample_period": 0.1},
      "behaviors": {"ascent_speed": 1.5, ...},
      "faults": [{"kind": "battery_drain_multiplier", "start": 10, "factor": 3}],
      "table": "table.json" | {inline table},
      "priorities": {"SomeEvent": 42}
    }
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from pathlib import Path
from typing import Any

from .coordinator import LoopConfig
from .fsm.table import TransitionTable, canonical_table
from .healthguard import ThresholdConfig
from .mission_plan import MissionPlan, ParameterServer, parse_plan
from .sim.faults import FaultInjection
from .sim.plant import PlantConfig


class ConfigError(Exception):
    pass


@dataclass
class RunConfig:
    plan: MissionPlan | None = None
    loop: LoopConfig = field(default_factory=LoopConfig)
    plant: PlantConfig = field(default_factory=PlantConfig)
    thresholds: ThresholdConfig = field(default_factory=ThresholdConfig)
    table: TransitionTable = field(default_factory=canonical_table)
    faults: list[FaultInjection] = field(default_factory=list)
    priorities: dict[str, int] = field(default_factory=dict)
    params: ParameterServer = field(default_factory=ParameterServer)
    healthguard_period: float = 0.1   # 10 Hz sampling

    def copy(self) -> "RunConfig":
        return RunConfig(
            plan=self.plan,
            loop=LoopConfig(self.loop.tick_period, self.loop.max_events_per_cycle,
                            self.loop.queue_capacity),
            plant=PlantConfig(**vars(self.plant)),
            thresholds=ThresholdConfig(**{k: getattr(self.thresholds, k)
                                          for k in vars(self.thresholds)}),
            table=self.table,
            faults=list(self.faults),
            priorities=dict(self.priorities),
            params=self.params,
            healthguard_period=self.healthguard_period,
        )


def load_run_config(source: str | Path | dict) -> RunConfig:
    if isinstance(source, (str, Path)):
        base = Path(source).parent
        try:
            doc = json.loads(Path(source).read_text())
        except json.JSONDecodeError as e:
            raise ConfigError(f"invalid JSON in {source}: {e}") from None
    else:
        base = Path(".")
        doc = source
    if not isinstance(doc, dict):
        raise ConfigError("run config must be a JSON object")

    cfg = RunConfig()

    plan_doc = doc.get("plan")
    if isinstance(plan_doc, str):
        cfg.plan = parse_plan((base / plan_doc).read_bytes())
    elif isinstance(plan_doc, dict):
        cfg.plan = parse_plan(plan_doc)

    loop_doc = doc.get("loop", {})
    cfg.loop = LoopConfig(
        tick_period=float(loop_doc.get("tick_period", 0.02)),
        max_events_per_cycle=loop_doc.get("max_events_per_cycle"),
        queue_capacity=int(loop_doc.get("queue_capacity", 256)),
    )

    if "vehicle" in doc:
        cfg.plant = PlantConfig.from_dict(doc["vehicle"])

    hg_doc = dict(doc.get("healthguard", {}))
    cfg.healthguard_period = float(hg_doc.pop("sample_period", 0.1))
    if hg_doc:
        thresholds = ThresholdConfig(**hg_doc)
        thresholds.validate()
        cfg.thresholds = thresholds

    table_doc = doc.get("table")
    if isinstance(table_doc, str):
        cfg.table = TransitionTable.from_json((base / table_doc).read_text())
    elif isinstance(table_doc, dict):
        cfg.table = TransitionTable.from_dict(table_doc)

    cfg.faults = [FaultInjection.from_dict(f) for f in doc.get("faults", [])]
    cfg.priorities = {str(k): int(v) for k, v in doc.get("priorities", {}).items()}

    # Everything the leaves read goes through the parameter server.
    cfg.params = ParameterServer({
        "behaviors": doc.get("behaviors", {}),
        "healthguard": {
            "battery_low": cfg.thresholds.battery_low,
            "battery_critical": cfg.thresholds.battery_critical,
            "battery_emergency": cfg.thresholds.battery_emergency,
            "estimator_floor": cfg.thresholds.estimator_floor,
        },
        "vehicle": {k: v for k, v in vars(cfg.plant).items()},
    })
    return cfg
