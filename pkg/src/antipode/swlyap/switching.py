from __future__ import annotations

import logging
from dataclasses import dataclass, replace
from typing import Any, Sequence

import numpy as np

from antipode.control import ensure_switch_sign
from antipode.control.errors import InvalidGains

logger = logging.getLogger(__name__)

DECREASE_TOLERANCE = 1e-9


@dataclass(frozen=True)
class SwitchEvent:
    t: float
    old_sigma: int
    new_sigma: int
    v: float


@dataclass(frozen=True)
class SwitchState:
    """Switching variable of one run together with its log of switch events.

    ``v`` of each event is the Lyapunov function of the incoming ``σ``, right after the switch.
    """

    sigma: int = 1
    events: tuple[SwitchEvent, ...] = ()


def next_sigma(sigma: Any, lambda_: Any, delta: float) -> np.ndarray:
    """Hysteresis rule: go to ``+1`` once ``Λ ≥ δ``, to ``−1`` once ``Λ ≤ −δ``, else stay."""
    sigma = ensure_switch_sign(sigma)
    lambda_ = np.asarray(lambda_, dtype=float)
    return np.where(lambda_ >= delta, 1.0, np.where(lambda_ <= -delta, -1.0, sigma))


def switch_update(
    st: SwitchState, lambda_: float, delta: float, t: float, v_active: float
) -> SwitchState:
    """Applies ``next_sigma`` to ``st``; ``v_active`` is ``V`` of the ``σ`` active afterwards."""
    if not delta > 0:
        raise InvalidGains("delta", delta, "a positive, finite hysteresis width")
    sigma = int(next_sigma(st.sigma, lambda_, delta))
    if sigma == st.sigma:
        return st
    event = SwitchEvent(t=float(t), old_sigma=st.sigma, new_sigma=sigma, v=float(v_active))
    logger.debug(
        f"Switched sigma {st.sigma:+d} -> {sigma:+d} at t={event.t:.4f} s "
        f"(Lambda={float(lambda_):.4g}, V={event.v:.4g})"
    )
    return replace(st, sigma=sigma, events=st.events + (event,))


def switch_update_batch(
    states: Sequence[SwitchState], lambda_: Any, delta: float, t: float, v_active: Any
) -> tuple[SwitchState, ...]:
    """``switch_update`` applied to each member of a batch; members that keep ``σ`` pass through."""
    if not delta > 0:
        raise InvalidGains("delta", delta, "a positive, finite hysteresis width")
    lambda_ = np.broadcast_to(np.asarray(lambda_, dtype=float), (len(states),))
    v_active = np.broadcast_to(np.asarray(v_active, dtype=float), (len(states),))
    sigma = np.array([st.sigma for st in states], dtype=float)
    updated = list(states)
    for i in np.flatnonzero(next_sigma(sigma, lambda_, delta) != sigma):
        updated[i] = switch_update(states[i], lambda_[i], delta, t, v_active[i])
    return tuple(updated)


@dataclass(frozen=True)
class DecreaseViolation:
    """A return to the same ``σ`` at which ``V`` did not drop by at least ``δ``."""

    left: SwitchEvent
    returned: SwitchEvent

    @property
    def change(self) -> float:
        return self.returned.v - self.left.v


def check_return_decrease(st: SwitchState, delta: float) -> list[DecreaseViolation]:
    """Checks every pair of adjacent returns to the same ``σ`` in the switch log."""
    violations = []
    for left, middle, returned in zip(st.events, st.events[1:], st.events[2:]):
        if not (left.new_sigma == returned.new_sigma != middle.new_sigma):
            continue
        if returned.v - left.v > -delta + DECREASE_TOLERANCE:
            violations.append(DecreaseViolation(left=left, returned=returned))
    return violations
