from .config import (
    DEFAULT_IC_PAIRS,
    ExperimentConfig,
    NoiseConfig,
    config_from_dict,
    load_config,
)
from .simulation import RUN_COLUMNS, RunLog, control_step, run_experiment
from .closed_loop import BatchTrajectory, initial_states, simulate_batch
from .metrics import PfmResult, altitude_drop, gamma_p, gamma_tau, pfm
from .sweeps import CellStats, Reduction, SweepSummary, sweep
from .verification import CheckResult, VerifyReport, verify
from .emit import OutputFormat, emit, read_run_csv

__all__ = [
    "DEFAULT_IC_PAIRS",
    "ExperimentConfig",
    "NoiseConfig",
    "config_from_dict",
    "load_config",
    "RUN_COLUMNS",
    "RunLog",
    "control_step",
    "run_experiment",
    "BatchTrajectory",
    "initial_states",
    "simulate_batch",
    "PfmResult",
    "altitude_drop",
    "gamma_p",
    "gamma_tau",
    "pfm",
    "CellStats",
    "Reduction",
    "SweepSummary",
    "sweep",
    "CheckResult",
    "VerifyReport",
    "verify",
    "OutputFormat",
    "emit",
    "read_run_csv",
]
