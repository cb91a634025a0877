from __future__ import annotations

from typing import Any

from antipode.errors import Text, InvalidInput, num, vec


class InvalidProfile(InvalidInput):
    def __init__(self, field: str, value: Any, problem: str):
        self.field = field
        self.value = value
        self.problem = problem

    def explanation(self) -> str:
        t = Text(f"Invalid yaw maneuver profile field '{self.field}':")
        t.indented_line(vec(self.value))
        t.newline(self.problem)
        return str(t)

    def failsafe_explanation(self) -> str:
        return f"Invalid yaw maneuver profile field '{self.field}'."


class InconsistentReference(InvalidInput):
    def __init__(self, qd: Any, scalar_part: float):
        self.qd = qd
        self.scalar_part = scalar_part

    def explanation(self) -> str:
        t = Text("The reference attitude rate is not tangent to the unit sphere at:")
        t.indented_line(vec(self.qd))
        t.newline(f"The scalar part of 2 qinv(qd) * qd_dot is {num(self.scalar_part)}.")
        t.newline("It must vanish along a path of unit quaternions; the limit is 1e-06.")
        return str(t)

    def failsafe_explanation(self) -> str:
        return "The reference attitude rate is not tangent to the unit sphere."


class NegativeSampleTime(InvalidInput):
    def __init__(self, t: float):
        self.t = t

    def explanation(self) -> str:
        t = Text(f"Attempted to sample the reference at t = {num(self.t)} s.")
        t.newline("Maneuvers start at t = 0.")
        return str(t)

    def failsafe_explanation(self) -> str:
        return "Reference sample times must be non-negative."
