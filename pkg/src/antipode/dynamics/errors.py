from __future__ import annotations

from typing import Any

from antipode.errors import Text, InvalidInput, NumericalFailure, num, vec


class InvalidRigidBodyParams(InvalidInput):
    def __init__(self, field: str, value: Any, requirement: str):
        self.field = field
        self.value = value
        self.requirement = requirement

    def explanation(self) -> str:
        t = Text(f"Invalid rigid body parameter '{self.field}':")
        t.indented_line(vec(self.value))
        t.newline(f"It must be {self.requirement}.")
        return str(t)

    def failsafe_explanation(self) -> str:
        return f"Invalid rigid body parameter '{self.field}'."


class InvalidTimeStep(InvalidInput):
    def __init__(self, dt: float):
        self.dt = dt

    def explanation(self) -> str:
        t = Text(f"Attempted to integrate with a time step of {num(self.dt)} s.")
        t.newline("Time steps must be strictly positive and finite.")
        return str(t)

    def failsafe_explanation(self) -> str:
        return "Time steps must be strictly positive."


class NumericalBlowup(NumericalFailure):
    def __init__(self, t: float, quantities: list[str]):
        self.t = t
        self.quantities = quantities

    def explanation(self) -> str:
        t = Text(f"The simulation stopped producing finite numbers at t = {num(self.t)} s.")
        t.newline("Non-finite state components:")
        with t.indented_block(blank_before=False, blank_after=False):
            for quantity in self.quantities:
                t.newline(f"- {quantity}")
        t.newline("This usually means gains that are too stiff for the chosen time step.")
        return str(t)

    def failsafe_explanation(self) -> str:
        return "The simulation stopped producing finite numbers."
