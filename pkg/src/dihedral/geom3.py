"""Primitive 3D geometry: axis lines, cylindrical coordinates and rigid motions.

Points are plain ``numpy`` arrays of shape ``(3,)``. Angles are radians and are
never reduced modulo 2*pi on input.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import NamedTuple

import numpy as np

TWO_PI = 2.0 * math.pi
EPS_REL = 1e-9
AXIS_UNIT_TOL = 1e-12
DRIFT_TOL = 1e-12
RENORM_EVERY = 64


class InvalidAxisError(ValueError):
    pass


def as_point(p) -> np.ndarray:
    a = np.asarray(p, dtype=float).reshape(3)
    if not np.all(np.isfinite(a)):
        raise ValueError(f"non-finite coordinates: {a!r}")
    return a


def eps_geom(*arrays) -> float:
    """Scale-aware tolerance: 1e-9 times max(1, bounding-box diagonal of the inputs)."""
    pts = np.concatenate([np.asarray(a, dtype=float).reshape(-1, 3) for a in arrays])
    if len(pts) == 0:
        return EPS_REL
    diag = float(np.linalg.norm(pts.max(axis=0) - pts.min(axis=0)))
    return EPS_REL * max(1.0, diag)


@dataclass(frozen=True)
class AxisLine:
    origin: np.ndarray
    direction: np.ndarray

    def __post_init__(self):
        o = as_point(self.origin)
        d = as_point(self.direction)
        if abs(float(np.linalg.norm(d)) - 1.0) > AXIS_UNIT_TOL:
            raise InvalidAxisError(f"axis direction must be a unit vector, got norm {np.linalg.norm(d)!r}")
        object.__setattr__(self, "origin", o)
        object.__setattr__(self, "direction", d)

    @classmethod
    def through(cls, p, q) -> "AxisLine":
        """Oriented line from ``p`` towards ``q``."""
        p = as_point(p)
        q = as_point(q)
        d = q - p
        n = float(np.linalg.norm(d))
        if n == 0.0:
            raise InvalidAxisError("cannot orient an axis through coincident points")
        return cls(p, d / n)

    def frame(self) -> tuple[np.ndarray, np.ndarray]:
        """Two unit vectors completing ``direction`` to a right-handed frame."""
        d = self.direction
        # pick the world axis least aligned with d
        k = int(np.argmin(np.abs(d)))
        helper = np.zeros(3)
        helper[k] = 1.0
        e1 = helper - d * float(helper @ d)
        e1 /= np.linalg.norm(e1)
        e2 = np.cross(d, e1)
        return e1, e2


class CylCoord(NamedTuple):
    radius: float
    angle: float
    height: float


def to_cylindrical(axis: AxisLine, p) -> CylCoord:
    w = as_point(p) - axis.origin
    e1, e2 = axis.frame()
    h = float(w @ axis.direction)
    x = float(w @ e1)
    y = float(w @ e2)
    r = math.hypot(x, y)
    if r == 0.0:
        return CylCoord(0.0, 0.0, h)
    ang = math.atan2(y, x) % TWO_PI
    if ang >= TWO_PI:  # -tiny % 2pi rounds up to 2pi
        ang = 0.0
    return CylCoord(r, ang, h)


def from_cylindrical(axis: AxisLine, c: CylCoord) -> np.ndarray:
    e1, e2 = axis.frame()
    return (
        axis.origin
        + c.height * axis.direction
        + c.radius * (math.cos(c.angle) * e1 + math.sin(c.angle) * e2)
    )


def _orthonormalize(r: np.ndarray) -> np.ndarray:
    u, _, vt = np.linalg.svd(r)
    q = u @ vt
    if np.linalg.det(q) < 0:
        u[:, -1] = -u[:, -1]
        q = u @ vt
    return q


def orthonormality_drift(r: np.ndarray) -> float:
    return float(np.max(np.abs(r.T @ r - np.eye(3))))


@dataclass(frozen=True)
class RigidMotion:
    """``p -> rotation @ p + translation``.

    ``depth`` counts compositions since the rotation was last re-orthonormalized.
    """

    rotation: np.ndarray = field(default_factory=lambda: np.eye(3))
    translation: np.ndarray = field(default_factory=lambda: np.zeros(3))
    depth: int = 0

    @classmethod
    def identity(cls) -> "RigidMotion":
        return _IDENTITY

    def is_identity(self) -> bool:
        return self is _IDENTITY

    def apply(self, p) -> np.ndarray:
        return self.rotation @ np.asarray(p, dtype=float) + self.translation

    def apply_many(self, pts: np.ndarray) -> np.ndarray:
        return pts @ self.rotation.T + self.translation

    def inverse(self) -> "RigidMotion":
        rt = self.rotation.T
        return RigidMotion(rt, -(rt @ self.translation), self.depth)

    def __matmul__(self, other: "RigidMotion") -> "RigidMotion":
        return compose(self, other)


_IDENTITY = RigidMotion()


def compose(outer: RigidMotion, inner: RigidMotion) -> RigidMotion:
    """Motion applying ``inner`` first, then ``outer``."""
    if inner is _IDENTITY:
        return outer
    if outer is _IDENTITY:
        return inner
    r = outer.rotation @ inner.rotation
    t = outer.rotation @ inner.translation + outer.translation
    depth = max(outer.depth, inner.depth) + 1
    if depth >= RENORM_EVERY or orthonormality_drift(r) > DRIFT_TOL:
        r = _orthonormalize(r)
        depth = 0
    return RigidMotion(r, t, depth)


def rotation_matrix(direction: np.ndarray, phi: float) -> np.ndarray:
    """Right-handed rotation by ``phi`` about the unit vector ``direction`` (Rodrigues)."""
    x, y, z = direction
    c = math.cos(phi)
    s = math.sin(phi)
    C = 1.0 - c
    return np.array(
        [
            [c + x * x * C, x * y * C - z * s, x * z * C + y * s],
            [y * x * C + z * s, c + y * y * C, y * z * C - x * s],
            [z * x * C - y * s, z * y * C + x * s, c + z * z * C],
        ]
    )


def rotate_about_axis(axis: AxisLine, phi: float) -> RigidMotion:
    if not math.isfinite(phi):
        raise ValueError("rotation angle must be finite")
    if phi == 0.0:
        return _IDENTITY
    r = rotation_matrix(axis.direction, phi)
    # fixes the axis: p -> R (p - o) + o
    t = axis.origin - r @ axis.origin
    return RigidMotion(r, t, 0)
