from __future__ import annotations

from typing import Any

from antipode.errors import Text, InvalidInput, num, vec


class NonUnitAxis(InvalidInput):
    def __init__(self, axis: Any, norm: float):
        self.axis = axis
        self.norm = norm

    def explanation(self) -> str:
        t = Text("Attempted to build a rotation around the axis:")
        t.indented_line(vec(self.axis))
        t.newline(f"whose norm is {num(self.norm)}. Rotation axes must be unit vectors.")
        t.newline("Normalize the axis before building the rotation:")
        t.indented_line("from_axis_angle(u / np.linalg.norm(u), phi)")
        return str(t)

    def failsafe_explanation(self) -> str:
        return "Rotation axes must be unit vectors."


class DegenerateQuaternion(InvalidInput):
    def __init__(self, q: Any, norm: float):
        self.q = q
        self.norm = norm

    def explanation(self) -> str:
        t = Text("Attempted to normalize the quaternion:")
        t.indented_line(vec(self.q))
        t.newline(f"But its norm ({num(self.norm)}) is too close to zero to define a direction.")
        return str(t)

    def failsafe_explanation(self) -> str:
        return "Cannot normalize a quaternion with (near) zero norm."


class NotAUnitQuaternion(InvalidInput):
    def __init__(self, q: Any, deviation: float):
        self.q = q
        self.deviation = deviation

    def explanation(self) -> str:
        t = Text("Expected an attitude quaternion, but got:")
        t.indented_line(vec(self.q))
        t.newline(
            f"Its squared norm is off from 1 by {num(self.deviation)}, "
            "which is more than the allowed 1e-09."
        )
        t.newline("Use renormalize() if the deviation comes from accumulated round-off.")
        return str(t)

    def failsafe_explanation(self) -> str:
        return "Expected a unit quaternion."
