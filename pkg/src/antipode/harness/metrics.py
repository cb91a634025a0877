"""Performance figures of merit of a logged run.

Both figures are root-mean-square values over the window ``[t0, tf]``: ``gamma_tau`` of the
torque norm and ``gamma_p`` of the rotational power ``τᵀω``. Integrals use the trapezoidal rule
on the logged grid, with the window ends interpolated linearly.
"""
from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np
import numpy.typing as npt

from antipode.harness.errors import InvalidWindow
from antipode.harness.simulation import RunLog

WINDOW_TOLERANCE = 1e-9


@dataclass(frozen=True)
class PfmResult:
    gamma_tau: float
    gamma_p: float
    t0: float
    tf: float


def _check_window(log: RunLog, t0: float, tf: float) -> None:
    start, end = (float(log.t[0]), float(log.t[-1])) if len(log) else (math.nan, math.nan)
    inside = t0 >= start - WINDOW_TOLERANCE and tf <= end + WINDOW_TOLERANCE
    if not (tf > t0 and inside):
        raise InvalidWindow(t0, tf, start, end)


Series = npt.NDArray[np.float64]


def _rms(t: Series, squared: Series, t0: float, tf: float) -> float:
    interior = (t > t0) & (t < tf)
    grid = np.concatenate([[t0], t[interior], [tf]])
    values = np.concatenate(
        [[np.interp(t0, t, squared)], squared[interior], [np.interp(tf, t, squared)]]
    )
    return math.sqrt(max(float(np.trapezoid(values, grid)), 0.0) / (tf - t0))


def gamma_tau(log: RunLog, t0: float, tf: float) -> float:
    _check_window(log, t0, tf)
    return _rms(log.t, np.sum(log.tau * log.tau, axis=-1), t0, tf)


def gamma_p(log: RunLog, t0: float, tf: float) -> float:
    _check_window(log, t0, tf)
    power = np.sum(log.tau * log.w, axis=-1)
    return _rms(log.t, power * power, t0, tf)


def pfm(log: RunLog, t0: float, tf: float) -> PfmResult:
    return PfmResult(gamma_tau=gamma_tau(log, t0, tf), gamma_p=gamma_p(log, t0, tf), t0=t0, tf=tf)


def altitude_drop(log: RunLog, t0: float, tf: float) -> float:
    """Largest loss of altitude below ``z(t0)`` within the window; zero for attitude-only runs."""
    _check_window(log, t0, tf)
    if log.r is None:
        return 0.0
    z = log.r[:, 2]
    interior = (log.t > t0) & (log.t < tf)
    z0, zf = (float(np.interp(t, log.t, z)) for t in (t0, tf))
    return max(z0 - float(np.min(z[interior], initial=zf)), 0.0)
