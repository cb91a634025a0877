from .gains import Diagonal, Gains, as_diagonal
from .laws import (
    ControllerKind,
    ErrorState,
    ensure_switch_sign,
    error_rates,
    error_state,
    n_e_dot,
    torque_benchmark,
    torque_continuous,
    torque_switching,
)

__all__ = [
    "Diagonal",
    "Gains",
    "as_diagonal",
    "ControllerKind",
    "ErrorState",
    "ensure_switch_sign",
    "error_rates",
    "error_state",
    "n_e_dot",
    "torque_benchmark",
    "torque_continuous",
    "torque_switching",
]
