from .blackboard import Blackboard, register_blackboard_type
from .errors import (
    BadParam,
    BlackboardKeyError,
    BlackboardTypeError,
    BtError,
    DuplicateRegistration,
    ResetWhileRunning,
    StructuralViolation,
    TreeHalted,
    UnknownLeafName,
    UnknownNodeId,
)
from .factory import NodeRegistry, build_tree
from .nodes import LeafImpl, Lifecycle, NodeStatus
from .tree import BehaviorTree

__all__ = [
    "BadParam",
    "BehaviorTree",
    "Blackboard",
    "BlackboardKeyError",
    "BlackboardTypeError",
    "BtError",
    "DuplicateRegistration",
    "LeafImpl",
    "Lifecycle",
    "NodeRegistry",
    "NodeStatus",
    "ResetWhileRunning",
    "StructuralViolation",
    "TreeHalted",
    "UnknownLeafName",
    "UnknownNodeId",
    "build_tree",
    "register_blackboard_type",
]
