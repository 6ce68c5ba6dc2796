"""The w-power index process on graphs."""

from __future__ import annotations

from .dynamics import evolve, power, power_all, step
from .graph import Graph
from .models import Configuration, Semantics, TrajectoryReport

__all__ = [
    "Configuration",
    "Graph",
    "Semantics",
    "TrajectoryReport",
    "evolve",
    "power",
    "power_all",
    "step",
]
