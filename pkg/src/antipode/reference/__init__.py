from .profile import ReferenceSample, Stage, YawManeuverProfile, sample
from .rates import desired_rate_tilde, map_desired_rate

__all__ = [
    "ReferenceSample",
    "Stage",
    "YawManeuverProfile",
    "sample",
    "desired_rate_tilde",
    "map_desired_rate",
]
