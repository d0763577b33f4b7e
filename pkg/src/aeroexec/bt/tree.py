"""Executable behavior tree: tick/halt/reset lifecycle, skip flags, status
snapshots and an optional CSV tick log."""

from __future__ import annotations

from typing import Any

from .blackboard import Blackboard
from .errors import ResetWhileRunning, TreeHalted, UnknownNodeId
from .nodes import BtNode, Lifecycle, NodeStatus


class BehaviorTree:
    def __init__(self, root: BtNode, blackboard: Blackboard | None = None):
        self.root = root
        self.blackboard = blackboard
        self.nodes: dict[str, BtNode] = {}
        self._dfs: list[tuple[BtNode, int]] = []
        self._index(root, 0)
        self.halted = False
        self.tick_index = 0
        self._tick_log: list[str] | None = None

    def _index(self, node: BtNode, depth: int) -> None:
        self.nodes[node.id] = node
        self._dfs.append((node, depth))
        for child in node.children:
            self._index(child, depth + 1)

    # -- lifecycle ------------------------------------------------------------

    def tick(self, clock) -> NodeStatus:
        if self.halted:
            raise TreeHalted("tree was halted; reset() before ticking again")
        status = self.root.tick(clock)
        # Skip flags only ever apply to the next tick after they were set.
        for node, _ in self._dfs:
            node.skip_flag = False
        if self._tick_log is not None:
            self._tick_log.append(f"{self.tick_index},{self.root.id},{status.value}")
        self.tick_index += 1
        return status

    def halt(self) -> list[str]:
        """Halt every running node, hooks firing leaf-to-root. Returns the
        node ids whose halt hooks ran, in order. Idempotent."""
        order: list[str] = []
        self.root.halt(order)
        self.halted = True
        return order

    def reset(self) -> None:
        if not self.halted and self.root.lifecycle is Lifecycle.RUNNING:
            raise ResetWhileRunning("halt() the tree before reset()")
        for node, _ in self._dfs:
            node.reset_state()
        self.halted = False
        self.tick_index = 0
        if self._tick_log is not None:
            self._tick_log = []

    def set_skip(self, node_id: str, flag: bool) -> None:
        try:
            self.nodes[node_id].skip_flag = bool(flag)
        except KeyError:
            raise UnknownNodeId(node_id) from None

    # -- observation ------------------------------------------------------------

    @property
    def status(self) -> Lifecycle:
        return self.root.lifecycle

    def snapshot(self) -> list[dict[str, Any]]:
        """Per-node lifecycle in depth-first order. `depth` lets a viewer
        rebuild the topology without a separate structure message."""
        return [
            {"id": node.id, "kind": node.kind, "label": getattr(node, "label", node.kind),
             "depth": depth, "status": node.lifecycle.value}
            for node, depth in self._dfs
        ]

    def enable_tick_log(self) -> None:
        if self._tick_log is None:
            self._tick_log = []

    def tick_log(self) -> list[str]:
        return list(self._tick_log or [])

    def tick_log_csv(self) -> str:
        return "\n".join(self._tick_log or []) + ("\n" if self._tick_log else "")
