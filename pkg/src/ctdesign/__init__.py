"""Completely regular and completely transitive designs in Johnson graphs."""
from __future__ import annotations

from .analysis import (
    AnalysisReport,
    DistancePartition,
    analyze,
    distance_partition,
    is_completely_regular,
    is_completely_transitive,
    min_distance,
    opposite,
    strength,
)
from .errors import DesignError, GroupError, MemoryCapError, NotPreservedError, TheoremViolation
from .johnson import Design, rank, subset, unrank
from .kernels import BACKEND
from .permgroup import PermGroup, orbits_on_ksubsets

__version__ = "0.1.0"

__all__ = [
    "AnalysisReport",
    "BACKEND",
    "Design",
    "DesignError",
    "DistancePartition",
    "GroupError",
    "MemoryCapError",
    "NotPreservedError",
    "PermGroup",
    "TheoremViolation",
    "analyze",
    "distance_partition",
    "is_completely_regular",
    "is_completely_transitive",
    "min_distance",
    "opposite",
    "orbits_on_ksubsets",
    "rank",
    "strength",
    "subset",
    "unrank",
]
