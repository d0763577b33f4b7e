class BtError(Exception):
    """Base class for behavior tree engine errors."""


class StructuralViolation(BtError):
    """Tree spec breaks a structural rule (arity, cycle, duplicate id)."""


class UnknownLeafName(BtError):
    """Spec references a leaf name that was never registered."""


class BadParam(BtError):
    """Node parameter outside its legal range."""


class DuplicateRegistration(BtError):
    """Leaf or duration name registered twice."""


class UnknownNodeId(BtError):
    """No node with that id in the tree."""


class ResetWhileRunning(BtError):
    """reset() called on a tree with running nodes that were not halted."""


class TreeHalted(BtError):
    """tick() called on a halted tree; reset() it first."""


class BlackboardKeyError(KeyError, BtError):
    """Read of an absent blackboard key."""


class BlackboardTypeError(BtError):
    """Write of a value outside the blackboard's closed type set."""
