from __future__ import annotations

from pathlib import Path
from typing import Optional

from antipode.errors import Text, HelpfulException, InvalidInput, num


class InvalidConfiguration(InvalidInput):
    def __init__(self, location: str, problem: str, source: Optional[Path] = None):
        self.location = location
        self.problem = problem
        self.source = source

    def explanation(self) -> str:
        where = f" in {self.source}" if self.source is not None else ""
        t = Text(f"Invalid experiment configuration at '{self.location}'{where}:")
        t.indented_line(self.problem)
        return str(t)

    def failsafe_explanation(self) -> str:
        return f"Invalid experiment configuration at '{self.location}'."


class InvalidWindow(InvalidInput):
    def __init__(self, t0: float, tf: float, start: float, end: float):
        self.t0 = t0
        self.tf = tf
        self.start = start
        self.end = end

    def explanation(self) -> str:
        t = Text(f"Attempted to evaluate a metric over [{num(self.t0)}, {num(self.tf)}] s.")
        if not self.tf > self.t0:
            t.newline("The window must end after it starts.")
        else:
            t.newline(f"The run log only covers [{num(self.start)}, {num(self.end)}] s.")
        return str(t)

    def failsafe_explanation(self) -> str:
        return "Metric window outside of the run log."


class OutputFailure(HelpfulException):
    def __init__(self, path: Path, reason: str):
        self.path = path
        self.reason = reason

    def explanation(self) -> str:
        t = Text(f"Could not access {self.path}:")
        t.indented_line(self.reason)
        return str(t)

    def failsafe_explanation(self) -> str:
        return "Could not access an output file."
