"""Tree factory: builds executable trees from declarative JSON specs by
linking registered leaf constructors.

Spec format, one object per node:

    {"id": "optional", "kind": "Sequence", "params": {...}, "children": [...]}

Kinds are exactly Sequence, Fallback, Parallel, Retry, Timeout, Inverter,
Action and Condition. Leaves name their registered implementation in
params["name"]. Omitted ids are assigned deterministically from the
depth-first ordinal.
"""

from __future__ import annotations

from typing import Any, Callable

from .blackboard import Blackboard
from .errors import (
    BadParam,
    DuplicateRegistration,
    StructuralViolation,
    UnknownLeafName,
)
from .nodes import (
    ALL_KINDS,
    ActionNode,
    BtNode,
    ConditionNode,
    FallbackNode,
    InverterNode,
    LeafImpl,
    ParallelNode,
    RetryNode,
    SequenceNode,
    TimeoutNode,
)
from .tree import BehaviorTree

LeafCtor = Callable[[dict, Any], LeafImpl]
DurationFn = Callable[[Any], float]

_CONTROL = {"Sequence": SequenceNode, "Fallback": FallbackNode, "Parallel": ParallelNode}


class NodeRegistry:
    """Named leaf constructors plus named timeout-duration callbacks."""

    def __init__(self) -> None:
        self._leaves: dict[str, LeafCtor] = {}
        self._durations: dict[str, DurationFn] = {}

    def register(self, name: str, ctor: LeafCtor) -> None:
        if name in self._leaves:
            raise DuplicateRegistration(f"leaf {name!r} already registered")
        self._leaves[name] = ctor

    def register_duration(self, name: str, fn: DurationFn) -> None:
        if name in self._durations:
            raise DuplicateRegistration(f"duration {name!r} already registered")
        self._durations[name] = fn

    def create_leaf(self, name: str, params: dict, ctx: Any) -> LeafImpl:
        try:
            ctor = self._leaves[name]
        except KeyError:
            raise UnknownLeafName(name) from None
        return ctor(params, ctx)

    def duration(self, name: str) -> DurationFn:
        try:
            return self._durations[name]
        except KeyError:
            raise BadParam(f"unknown duration callback {name!r}") from None

    def leaf_names(self) -> list[str]:
        return sorted(self._leaves)


def build_tree(
    spec: dict,
    registry: NodeRegistry,
    ctx: Any = None,
    blackboard: Blackboard | None = None,
) -> BehaviorTree:
    """Validate `spec` and link it into an executable tree, all nodes Idle.

    Raises UnknownLeafName, StructuralViolation (arity, cycle, duplicate id)
    or BadParam. `ctx` is handed to every leaf constructor and duration
    callback; by convention it exposes the blackboard and vehicle session.
    """
    if blackboard is None:
        blackboard = getattr(ctx, "blackboard", None) or Blackboard()
    counter = [0]
    root = _build_node(spec, registry, ctx, counter, ancestors=set())
    tree = BehaviorTree(root, blackboard)
    if len(tree.nodes) != counter[0]:
        dupes = counter[0] - len(tree.nodes)
        raise StructuralViolation(f"{dupes} duplicate node id(s) in tree spec")
    return tree


def _build_node(
    spec: dict,
    registry: NodeRegistry,
    ctx: Any,
    counter: list[int],
    ancestors: set[int],
) -> BtNode:
    if not isinstance(spec, dict):
        raise StructuralViolation(f"node spec must be an object, got {type(spec).__name__}")
    if id(spec) in ancestors:
        raise StructuralViolation("cycle detected in tree spec")
    kind = spec.get("kind")
    if kind not in ALL_KINDS:
        raise StructuralViolation(f"unknown node kind {kind!r}")
    params = dict(spec.get("params") or {})
    children_spec = spec.get("children") or []
    _check_arity(kind, len(children_spec))

    ordinal = counter[0]
    counter[0] += 1
    node_id = spec.get("id") or _auto_id(ordinal, kind, params)

    ancestors = ancestors | {id(spec)}
    children = [_build_node(c, registry, ctx, counter, ancestors) for c in children_spec]

    if kind in _CONTROL:
        if kind == "Parallel":
            m = params.get("success_threshold", len(children))
            if not isinstance(m, int) or not 1 <= m <= len(children):
                raise BadParam(f"Parallel success_threshold must be in [1, {len(children)}], got {m!r}")
        return _CONTROL[kind](node_id, children, params)

    if kind == "Retry":
        n = params.get("max_attempts")
        if not isinstance(n, int) or n < 1:
            raise BadParam(f"Retry max_attempts must be an integer >= 1, got {n!r}")
        return RetryNode(node_id, children, params)

    if kind == "Timeout":
        duration = params.get("duration_s")
        fn_name = params.get("duration_fn")
        if (duration is None) == (fn_name is None):
            raise BadParam("Timeout needs exactly one of duration_s or duration_fn")
        if duration is not None:
            if not isinstance(duration, (int, float)) or duration <= 0:
                raise BadParam(f"Timeout duration_s must be > 0, got {duration!r}")
            return TimeoutNode(node_id, children, params)
        fn = registry.duration(fn_name)
        return TimeoutNode(node_id, children, params, duration_fn=lambda: fn(ctx))

    if kind == "Inverter":
        return InverterNode(node_id, children, params)

    # Leaves.
    name = params.get("name")
    if not name:
        raise BadParam(f"{kind} node needs params.name naming a registered leaf")
    impl = registry.create_leaf(name, params, ctx)
    cls = ActionNode if kind == "Action" else ConditionNode
    return cls(node_id, impl, params, label=name)


def _check_arity(kind: str, n_children: int) -> None:
    if kind in _CONTROL and n_children < 1:
        raise StructuralViolation(f"{kind} needs at least one child")
    if kind in ("Retry", "Timeout", "Inverter") and n_children != 1:
        raise StructuralViolation(f"{kind} needs exactly one child, got {n_children}")
    if kind in ("Action", "Condition") and n_children != 0:
        raise StructuralViolation(f"{kind} is a leaf and takes no children")


def _auto_id(ordinal: int, kind: str, params: dict) -> str:
    name = params.get("name")
    suffix = name if name else kind.lower()
    return f"n{ordinal}_{suffix}"
