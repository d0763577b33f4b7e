"""Mission executive for autonomous aerial exploration.

A deterministic finite state machine drives mission phases; behavior trees
execute the work inside each phase. A health monitor turns continuous
telemetry into discrete events, a simulated vehicle backend stands in for
real hardware behind the connector interface, and a Monte Carlo harness
runs seeded fault-injection campaigns against the whole stack.
"""

__version__ = "0.1.0"
