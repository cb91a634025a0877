from .algebra import (
    Vec3,
    Quaternion,
    UnitQuaternion,
    RotMatrix,
    IDENTITY,
    E3,
    quaternion,
    pure,
    qmul,
    qinv,
    renormalize,
    ensure_unit,
    from_axis_angle,
    to_axis_angle,
    to_rotmatrix,
    rotate,
    attitude_error,
    yaw,
)

__all__ = [
    "Vec3",
    "Quaternion",
    "UnitQuaternion",
    "RotMatrix",
    "IDENTITY",
    "E3",
    "quaternion",
    "pure",
    "qmul",
    "qinv",
    "renormalize",
    "ensure_unit",
    "from_axis_angle",
    "to_axis_angle",
    "to_rotmatrix",
    "rotate",
    "attitude_error",
    "yaw",
]
