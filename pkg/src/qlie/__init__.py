"""Exact computations with cocycle Lie algebras, degenerate Hall algebras and semicanonical coefficients of quiver root systems."""

from __future__ import annotations

__version__ = "0.1.0"

from .cartan import RootPartition, RootSystem, build_graph, root_partitions, root_system
from .cocycle import Orientation, all_orientations, reference_orientation
from .errors import InputError, InternalError, QlieError, ResourceError, ValidationError

__all__ = [
    "RootPartition", "RootSystem", "build_graph", "root_partitions", "root_system",
    "Orientation", "all_orientations", "reference_orientation",
    "InputError", "InternalError", "QlieError", "ResourceError", "ValidationError",
    "__version__",
]
