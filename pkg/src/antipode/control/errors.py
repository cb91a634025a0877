from __future__ import annotations

from typing import Any

from antipode.errors import Text, InvalidInput, vec


class InvalidGains(InvalidInput):
    def __init__(self, field: str, value: Any, requirement: str):
        self.field = field
        self.value = value
        self.requirement = requirement

    def explanation(self) -> str:
        t = Text(f"Invalid controller gain '{self.field}':")
        t.indented_line(vec(self.value))
        t.newline(f"It must be {self.requirement}.")
        return str(t)

    def failsafe_explanation(self) -> str:
        return f"Invalid controller gain '{self.field}'."


class InvalidSwitchSign(InvalidInput):
    def __init__(self, sigma: Any):
        self.sigma = sigma

    def explanation(self) -> str:
        t = Text("The switching variable must be +1 or -1, but got:")
        t.indented_line(vec(self.sigma))
        return str(t)

    def failsafe_explanation(self) -> str:
        return "The switching variable must be +1 or -1."
