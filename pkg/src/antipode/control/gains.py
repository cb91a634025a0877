from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Any

import numpy as np
import numpy.typing as npt

from antipode.control.errors import InvalidGains
from antipode.dynamics import CRAZYFLIE_INERTIA, diagonal_entries

Diagonal = npt.NDArray[np.float64]


def as_diagonal(name: str, matrix: Any) -> Diagonal:
    """Diagonal of a 3×3 diagonal matrix; a length-3 vector is taken as the diagonal itself."""
    matrix = np.asarray(matrix, dtype=float)
    if matrix.shape == (3,):
        return matrix
    diagonal = diagonal_entries(matrix)
    if diagonal is None:
        raise InvalidGains(name, matrix, "a 3x3 diagonal matrix")
    return diagonal


@dataclass(frozen=True, eq=False)
class Gains:
    """Feedback gains shared by the three control laws.

    ``kn`` and ``delta`` only affect the switching law. The diagonals of ``Kq`` and ``Kw`` are
    kept in ``kq`` and ``kw`` for the arithmetic.
    """

    Kq: npt.NDArray[np.float64]
    Kw: npt.NDArray[np.float64]
    kn: float = 10.0
    delta: float = 0.5
    kq: Diagonal = field(init=False, repr=False)
    kw: Diagonal = field(init=False, repr=False)

    def __post_init__(self) -> None:
        for name in ("Kq", "Kw"):
            value = getattr(self, name)
            diagonal = as_diagonal(name, value)
            if not np.all(np.isfinite(diagonal) & (diagonal > 0)):
                raise InvalidGains(name, value, "strictly positive along its diagonal")
            object.__setattr__(self, name, np.diag(diagonal))
            object.__setattr__(self, name.lower(), diagonal)
        if not (math.isfinite(self.kn) and self.kn > 0):
            raise InvalidGains("kn", self.kn, "a positive, finite rate in rad/s")
        if not (math.isfinite(self.delta) and self.delta > 0):
            raise InvalidGains("delta", self.delta, "a positive, finite hysteresis width")

    @classmethod
    def benchmark(cls, J: Any = CRAZYFLIE_INERTIA) -> Gains:
        """Gains tuned for the sign-of-m_e benchmark controller on the quadrotor ``J``."""
        j = as_diagonal("J", J)
        return cls(Kq=np.diag(1e3 * j), Kw=np.diag(1e2 * j))

    @classmethod
    def switching(cls, J: Any = CRAZYFLIE_INERTIA) -> Gains:
        """Gains tuned for the switching controller on the quadrotor ``J``."""
        j = as_diagonal("J", J)
        return cls(Kq=np.diag(10.0 * j), Kw=np.diag(100.0 * j), kn=10.0, delta=0.5)
