from .control import ControllerKind, Gains
from .dynamics import BodyState, RigidBodyParams, SimulationMode
from .reference import YawManeuverProfile
from .harness import ExperimentConfig, RunLog, run_experiment, sweep, verify

__all__ = [
    "ControllerKind",
    "Gains",
    "BodyState",
    "RigidBodyParams",
    "SimulationMode",
    "YawManeuverProfile",
    "ExperimentConfig",
    "RunLog",
    "run_experiment",
    "sweep",
    "verify",
]
