from .rigid_body import (
    CRAZYFLIE_INERTIA,
    BodyState,
    Inputs,
    RigidBodyParams,
    SimulationMode,
    StateDerivative,
    derivatives,
    diagonal_entries,
)
from .integrator import InputsFn, hold, integrate, step_rk4
from .hover import HoverGains, hover_thrust

__all__ = [
    "CRAZYFLIE_INERTIA",
    "BodyState",
    "Inputs",
    "RigidBodyParams",
    "SimulationMode",
    "StateDerivative",
    "derivatives",
    "diagonal_entries",
    "InputsFn",
    "hold",
    "integrate",
    "step_rk4",
    "HoverGains",
    "hover_thrust",
]
