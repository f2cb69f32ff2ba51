"""Dihedral rotations of 3D polygonal chains with exact-sweep collision checks."""
from ._kernels import BACKEND
from .chain import (
    Chain,
    DegenerateEdgeError,
    SimplicityReport,
    apply_dihedral,
    is_simple,
    segment_distance,
    split_at_edge,
)
from .geom3 import AxisLine, RigidMotion, compose, eps_geom, rotate_about_axis
from .motiontree import MotionTree
from .sweep import (
    CollisionEvent,
    DihedralQuery,
    FeasibilityResult,
    RotationResult,
    dihedral_feasible,
    dyn_rotate,
    sweep_collision,
)

__version__ = "0.1.0"

__all__ = [
    "BACKEND", "AxisLine", "Chain", "CollisionEvent", "DegenerateEdgeError", "DihedralQuery",
    "FeasibilityResult", "MotionTree", "RigidMotion", "RotationResult", "SimplicityReport",
    "apply_dihedral", "compose", "dihedral_feasible", "dyn_rotate", "eps_geom", "is_simple",
    "rotate_about_axis", "segment_distance", "split_at_edge", "sweep_collision",
]
