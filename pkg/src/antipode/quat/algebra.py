"""Quaternion and rotation algebra.

Quaternions are float arrays whose last axis holds ``[w, x, y, z]``: scalar part first, Hamilton
convention (i ⊗ j = k). Vectors are arrays with a trailing axis of 3 and rotation matrices have a
trailing 3×3 block. Every function broadcasts over leading axes, so a single attitude and a
batch of attitudes go through the same code.
"""
from __future__ import annotations

from typing import Any

import numpy as np
import numpy.typing as npt

from antipode.quat.errors import NonUnitAxis, DegenerateQuaternion, NotAUnitQuaternion

Vec3 = npt.NDArray[np.float64]
Quaternion = npt.NDArray[np.float64]
UnitQuaternion = npt.NDArray[np.float64]
RotMatrix = npt.NDArray[np.float64]

UNIT_TOLERANCE = 1e-9
DEGENERATE_NORM = 1e-12

IDENTITY: UnitQuaternion = np.array([1.0, 0.0, 0.0, 0.0])
IDENTITY.setflags(write=False)
E3: Vec3 = np.array([0.0, 0.0, 1.0])
E3.setflags(write=False)

_CONJUGATE = np.array([1.0, -1.0, -1.0, -1.0])


def quaternion(w: Any, v: Any) -> Quaternion:
    """Assemble quaternions from scalar parts ``w`` and vector parts ``v``."""
    w = np.asarray(w, dtype=float)
    v = np.asarray(v, dtype=float)
    lead = np.broadcast_shapes(w.shape, v.shape[:-1])
    return np.concatenate(
        [np.broadcast_to(w, lead)[..., None], np.broadcast_to(v, lead + (3,))], axis=-1
    )


def pure(v: Any) -> Quaternion:
    """The quaternion ``(0, v)``."""
    return quaternion(0.0, v)


def qmul(a: Any, b: Any) -> Quaternion:
    a = np.asarray(a, dtype=float)
    b = np.asarray(b, dtype=float)
    aw, av = a[..., 0], a[..., 1:]
    bw, bv = b[..., 0], b[..., 1:]
    w = aw * bw - np.sum(av * bv, axis=-1)
    v = aw[..., None] * bv + bw[..., None] * av + np.cross(av, bv)
    return np.concatenate([w[..., None], v], axis=-1)


def qinv(q: Any) -> UnitQuaternion:
    """Inverse of a unit quaternion, which is its conjugate."""
    return np.asarray(q, dtype=float) * _CONJUGATE


def renormalize(q: Any) -> UnitQuaternion:
    q = np.asarray(q, dtype=float)
    norm = np.linalg.norm(q, axis=-1)
    degenerate = ~(norm > DEGENERATE_NORM)
    if np.any(degenerate):
        first = int(np.argmax(np.ravel(degenerate)))
        raise DegenerateQuaternion(q.reshape(-1, 4)[first], float(np.ravel(norm)[first]))
    return q / norm[..., None]


def ensure_unit(q: Any) -> UnitQuaternion:
    q = np.asarray(q, dtype=float)
    deviation = np.abs(np.sum(q * q, axis=-1) - 1.0)
    bad = ~(deviation <= UNIT_TOLERANCE)
    if np.any(bad):
        first = int(np.argmax(np.ravel(bad)))
        raise NotAUnitQuaternion(q.reshape(-1, 4)[first], float(np.ravel(deviation)[first]))
    return q


def from_axis_angle(u: Any, phi: Any) -> UnitQuaternion:
    """Rotation of ``phi`` radians around the unit axis ``u``: ``(cos(phi/2), u sin(phi/2))``."""
    u = np.asarray(u, dtype=float)
    norm = np.linalg.norm(u, axis=-1)
    bad = ~(np.abs(norm - 1.0) <= UNIT_TOLERANCE)
    if np.any(bad):
        first = int(np.argmax(np.ravel(bad)))
        raise NonUnitAxis(u.reshape(-1, 3)[first], float(np.ravel(norm)[first]))
    half = 0.5 * np.asarray(phi, dtype=float)
    return quaternion(np.cos(half), u * np.sin(half)[..., None])


def to_axis_angle(q: Any) -> tuple[Vec3, npt.NDArray[np.float64]]:
    """Axis–angle view of unit quaternions, with the angle in ``[0, 2π]``.

    The axis is undefined for the identity rotation; ``(0, 0, 1)`` is returned there.
    """
    q = np.asarray(q, dtype=float)
    v = q[..., 1:]
    v_norm = np.linalg.norm(v, axis=-1)
    phi = 2.0 * np.arctan2(v_norm, q[..., 0])
    defined = v_norm > DEGENERATE_NORM
    safe_norm = np.where(defined, v_norm, 1.0)
    axis = np.where(defined[..., None], v / safe_norm[..., None], E3)
    return axis, phi


def to_rotmatrix(q: Any) -> RotMatrix:
    """Rotation matrix that transforms vectors from body (B) to inertial (N) coordinates."""
    q = np.asarray(q, dtype=float)
    w, x, y, z = q[..., 0], q[..., 1], q[..., 2], q[..., 3]
    return np.stack(
        [
            np.stack([1 - 2 * (y * y + z * z), 2 * (x * y - w * z), 2 * (x * z + w * y)], axis=-1),
            np.stack([2 * (x * y + w * z), 1 - 2 * (x * x + z * z), 2 * (y * z - w * x)], axis=-1),
            np.stack([2 * (x * z - w * y), 2 * (y * z + w * x), 1 - 2 * (x * x + y * y)], axis=-1),
        ],
        axis=-2,
    )


def rotate(q: Any, v: Any) -> Vec3:
    """Express the B-frame vector ``v`` in N coordinates."""
    return np.einsum("...ij,...j->...i", to_rotmatrix(q), np.asarray(v, dtype=float))


def attitude_error(q: Any, qd: Any) -> UnitQuaternion:
    """Attitude-error quaternion ``q⁻¹ ⊗ qd``, renormalized."""
    return renormalize(qmul(qinv(q), qd))


def yaw(q: Any) -> npt.NDArray[np.float64]:
    """ZYX yaw angle in (−π, π]."""
    q = np.asarray(q, dtype=float)
    w, x, y, z = q[..., 0], q[..., 1], q[..., 2], q[..., 3]
    return np.arctan2(2 * (w * z + x * y), 1 - 2 * (y * y + z * z))
