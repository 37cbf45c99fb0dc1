"""Equivariant cohomology of a point and slice towers over C_pq."""

from .reps import GroupPQ, Quadruple, parse
from .cohomology import point_cohomology
from .ring import multiply, normalize, parse_ring, phi_sweep
from .slice import build_tower, validate_spherical

__all__ = [
    "GroupPQ", "Quadruple", "parse", "point_cohomology", "multiply", "normalize",
    "parse_ring", "phi_sweep", "build_tower", "validate_spherical",
]
__version__ = "0.1.0"
