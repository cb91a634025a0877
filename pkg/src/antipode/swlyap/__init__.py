from .lyapunov import (
    REGION_OF_ATTRACTION_LEVEL,
    LyapunovSample,
    in_region_of_attraction,
    lambda_fn,
    lyapunov_bounds,
    lyapunov_sample,
    lyapunov_v,
    lyapunov_vdot,
    subsystem_rates,
)
from .switching import (
    DecreaseViolation,
    SwitchEvent,
    SwitchState,
    check_return_decrease,
    next_sigma,
    switch_update,
    switch_update_batch,
)

__all__ = [
    "REGION_OF_ATTRACTION_LEVEL",
    "LyapunovSample",
    "in_region_of_attraction",
    "lambda_fn",
    "lyapunov_bounds",
    "lyapunov_sample",
    "lyapunov_v",
    "lyapunov_vdot",
    "subsystem_rates",
    "DecreaseViolation",
    "SwitchEvent",
    "SwitchState",
    "check_return_decrease",
    "next_sigma",
    "switch_update",
    "switch_update_batch",
]
