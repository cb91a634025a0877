"""Rigid-body equations of motion of a multirotor.

Translation is driven by the collective thrust along the body z axis and gravity, attitude by the
body torque. The attitude is the unit quaternion that takes body (B) coordinates to inertial (N)
coordinates, and the angular velocity is expressed in B.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from enum import Enum
from typing import Any, Optional, Union

import numpy as np
import numpy.typing as npt

from antipode.dynamics.errors import InvalidRigidBodyParams
from antipode.quat import (
    IDENTITY,
    E3,
    Vec3,
    Quaternion,
    UnitQuaternion,
    ensure_unit,
    pure,
    qmul,
    to_rotmatrix,
)

Scalar = Union[float, npt.NDArray[np.float64]]

CRAZYFLIE_INERTIA = np.diag([16.6e-6, 16.7e-6, 29.3e-6])


class SimulationMode(Enum):
    ATTITUDE = "attitude"
    SIX_DOF = "6dof"


def diagonal_entries(matrix: Any) -> Optional[npt.NDArray[np.float64]]:
    """The diagonal of ``matrix`` if it is a 3×3 diagonal matrix, ``None`` otherwise."""
    matrix = np.asarray(matrix, dtype=float)
    if matrix.shape != (3, 3):
        return None
    diagonal = np.diag(matrix).copy()
    if np.any(matrix - np.diag(diagonal) != 0.0):
        return None
    return diagonal


@dataclass(frozen=True, eq=False)
class RigidBodyParams:
    m: float = 0.032
    J: npt.NDArray[np.float64] = field(default_factory=lambda: CRAZYFLIE_INERTIA.copy())
    g: float = 9.81
    j: npt.NDArray[np.float64] = field(init=False, repr=False)

    def __post_init__(self) -> None:
        if not (np.isfinite(self.m) and self.m > 0):
            raise InvalidRigidBodyParams("m", self.m, "a positive, finite mass in kg")
        if not (np.isfinite(self.g) and self.g >= 0):
            raise InvalidRigidBodyParams("g", self.g, "a non-negative, finite acceleration")
        diagonal = diagonal_entries(self.J)
        if diagonal is None:
            raise InvalidRigidBodyParams("J", self.J, "a 3x3 diagonal matrix")
        if not np.all(np.isfinite(diagonal) & (diagonal > 0)):
            raise InvalidRigidBodyParams("J", self.J, "strictly positive along its diagonal")
        object.__setattr__(self, "J", np.asarray(self.J, dtype=float))
        object.__setattr__(self, "j", diagonal)

    def rotational_energy(self, w: Vec3) -> Scalar:
        return 0.5 * np.sum(self.j * w * w, axis=-1)


@dataclass(frozen=True, eq=False)
class BodyState:
    r: Vec3
    v: Vec3
    q: UnitQuaternion
    w: Vec3

    @classmethod
    def at_rest(cls, q: Any = IDENTITY, w: Any = (0.0, 0.0, 0.0)) -> BodyState:
        """A state at the origin, with zero translational velocity."""
        q = np.asarray(q, dtype=float)
        w = np.asarray(w, dtype=float)
        lead = np.broadcast_shapes(q.shape[:-1], w.shape[:-1])
        return cls(
            r=np.zeros(lead + (3,)),
            v=np.zeros(lead + (3,)),
            q=np.broadcast_to(q, lead + (4,)).copy(),
            w=np.broadcast_to(w, lead + (3,)).copy(),
        )

    def validated(self) -> BodyState:
        ensure_unit(self.q)
        return self

    def members(self) -> int:
        """Number of independent bodies held by this (possibly batched) state."""
        return int(np.prod(self.q.shape[:-1], dtype=int))


@dataclass(frozen=True, eq=False)
class Inputs:
    fa: Scalar
    tau: Vec3


@dataclass(frozen=True, eq=False)
class StateDerivative:
    dr: Vec3
    dv: Vec3
    dq: Quaternion
    dw: Vec3


def derivatives(s: BodyState, u: Inputs, p: RigidBodyParams) -> StateDerivative:
    b3 = to_rotmatrix(s.q)[..., :, 2]
    fa = np.asarray(u.fa, dtype=float)[..., None]
    jw = p.j * s.w
    return StateDerivative(
        dr=s.v,
        dv=(fa / p.m) * b3 - p.g * E3,
        dq=0.5 * qmul(s.q, pure(s.w)),
        dw=(u.tau - np.cross(s.w, jw)) / p.j,
    )
