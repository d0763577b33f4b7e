"""Shared test helpers: scripted leaves and tree-spec shorthand."""

from __future__ import annotations

from aeroexec.bt import LeafImpl, NodeRegistry, NodeStatus

S, F, R = NodeStatus.SUCCESS, NodeStatus.FAILURE, NodeStatus.RUNNING

_CODE = {"S": NodeStatus.SUCCESS, "F": NodeStatus.FAILURE, "R": NodeStatus.RUNNING}


class CyclingLeaf(LeafImpl):
    """Returns statuses from a script string like "FFS", one per execution,
    cycling when exhausted. Records halt and reset hook calls."""

    def __init__(self, script: str, log: list | None = None, name: str = ""):
        self.script = script
        self.calls = 0
        self.halts = 0
        self.log = log
        self.name = name

    def execute(self) -> NodeStatus:
        status = _CODE[self.script[self.calls % len(self.script)]]
        self.calls += 1
        if self.log is not None:
            self.log.append(("exec", self.name, status.value))
        return status

    def on_halt(self) -> None:
        self.halts += 1
        if self.log is not None:
            self.log.append(("halt", self.name))


def scripted_registry(log: list | None = None) -> NodeRegistry:
    registry = NodeRegistry()
    registry.register(
        "scripted",
        lambda params, ctx: CyclingLeaf(params.get("script", "S"), log,
                                        params.get("name_hint", "")),
    )
    return registry


def action(script: str, node_id: str | None = None, hint: str = "") -> dict:
    spec: dict = {"kind": "Action", "params": {"name": "scripted", "script": script}}
    if node_id:
        spec["id"] = node_id
    if hint:
        spec["params"]["name_hint"] = hint
    return spec


def condition(script: str, node_id: str | None = None) -> dict:
    spec: dict = {"kind": "Condition", "params": {"name": "scripted", "script": script}}
    if node_id:
        spec["id"] = node_id
    return spec


def seq(*children: dict, node_id: str | None = None) -> dict:
    spec: dict = {"kind": "Sequence", "children": list(children)}
    if node_id:
        spec["id"] = node_id
    return spec


def fallback(*children: dict) -> dict:
    return {"kind": "Fallback", "children": list(children)}


def retry(n: int, child: dict, node_id: str | None = None) -> dict:
    spec: dict = {"kind": "Retry", "params": {"max_attempts": n}, "children": [child]}
    if node_id:
        spec["id"] = node_id
    return spec


def timeout(duration: float, child: dict) -> dict:
    return {"kind": "Timeout", "params": {"duration_s": duration}, "children": [child]}


def inverter(child: dict) -> dict:
    return {"kind": "Inverter", "children": [child]}


def parallel(threshold: int, *children: dict) -> dict:
    return {"kind": "Parallel", "params": {"success_threshold": threshold},
            "children": list(children)}
