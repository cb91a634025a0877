"""Experiment configuration, loaded from a single JSON document.

Every key is optional and falls back to the values used for the Crazyflie-class experiments::

    {
      "params": {"m": 0.032, "J": [1.66e-5, 1.67e-5, 2.93e-5], "g": 9.81},
      "gains_benchmark": {"Kq": [...], "Kw": [...], "kn": 10.0, "delta": 0.5},
      "gains_switching": {"Kq": [...], "Kw": [...], "kn": 10.0, "delta": 0.5},
      "profile": {"t_hover": 1.0, "w0": [0, 0, 3], "psi0_deg": 120.0, "t_final": null},
      "dt": 0.002, "t0_offset": 0.0, "window": 3.0, "mode": "attitude",
      "hover": {"kp": 40.0, "kd": 8.0, "z_d": 0.0},
      "noise": {"omega_sigma": 0.02, "attitude_sigma_deg": 0.2},
      "repeats": 10, "rng_seed": 0, "workers": 1,
      "ic_pairs": [[3, 120], [4, 90], [2, 150], [1, 60], [0.5, 45]]
    }

Matrices are given by their diagonals. Unknown keys are rejected.
"""
from __future__ import annotations

import json
import math
from dataclasses import dataclass, field, replace
from pathlib import Path
from typing import Any, Callable, Optional, TypeVar

import numpy as np

from antipode.control import ControllerKind, Gains
from antipode.dynamics import HoverGains, RigidBodyParams, SimulationMode
from antipode.harness.errors import InvalidConfiguration, OutputFailure
from antipode.reference import YawManeuverProfile

DEFAULT_IC_PAIRS: tuple[tuple[float, float], ...] = (
    (3.0, 120.0),
    (4.0, 90.0),
    (2.0, 150.0),
    (1.0, 60.0),
    (0.5, 45.0),
)


@dataclass(frozen=True)
class NoiseConfig:
    """Zero-mean Gaussian measurement noise fed to the controller; the plant is unaffected."""

    omega_sigma: float = 0.02
    attitude_sigma: float = math.radians(0.2)

    def __post_init__(self) -> None:
        for name in ("omega_sigma", "attitude_sigma"):
            value = getattr(self, name)
            if not (math.isfinite(value) and value >= 0):
                raise InvalidConfiguration(f"noise.{name}", "Must be a non-negative number.")

    @property
    def silent(self) -> bool:
        return self.omega_sigma == 0.0 and self.attitude_sigma == 0.0


def _default_params() -> RigidBodyParams:
    return RigidBodyParams()


@dataclass(frozen=True, eq=False)
class ExperimentConfig:
    params: RigidBodyParams = field(default_factory=_default_params)
    gains_benchmark: Gains = field(default_factory=Gains.benchmark)
    gains_switching: Gains = field(default_factory=Gains.switching)
    profile: YawManeuverProfile = field(default_factory=YawManeuverProfile)
    dt: float = 0.002
    t0_offset: float = 0.0
    window: float = 3.0
    mode: SimulationMode = SimulationMode.ATTITUDE
    hover: HoverGains = field(default_factory=HoverGains)
    noise: Optional[NoiseConfig] = field(default_factory=NoiseConfig)
    repeats: int = 10
    rng_seed: int = 0
    workers: int = 1
    ic_pairs: tuple[tuple[float, float], ...] = DEFAULT_IC_PAIRS

    def __post_init__(self) -> None:
        if not (math.isfinite(self.dt) and self.dt > 0):
            raise InvalidConfiguration("dt", "Must be a positive number of seconds.")
        if not (math.isfinite(self.window) and self.window > 0):
            raise InvalidConfiguration("window", "Must be a positive number of seconds.")
        if not (math.isfinite(self.t0_offset) and self.t0_offset >= 0):
            raise InvalidConfiguration("t0_offset", "Must be a non-negative number of seconds.")
        if self.repeats < 1:
            raise InvalidConfiguration("repeats", "At least one repeat is needed.")
        if self.workers < 1:
            raise InvalidConfiguration("workers", "At least one worker is needed.")
        if self.rng_seed < 0:
            raise InvalidConfiguration("rng_seed", "Seeds must be non-negative integers.")
        if len(self.ic_pairs) == 0:
            raise InvalidConfiguration("ic_pairs", "At least one initial-condition pair is needed.")

    @property
    def t0(self) -> float:
        """Start of the metric window."""
        return self.profile.t0 + self.t0_offset

    @property
    def tf(self) -> float:
        """End of the metric window."""
        return self.t0 + self.window

    @property
    def t_final(self) -> float:
        return self.profile.t_final if self.profile.t_final is not None else self.tf

    def gains_for(self, controller: ControllerKind) -> Gains:
        if controller is ControllerKind.SWITCHING:
            return self.gains_switching
        return self.gains_benchmark

    def with_ic(self, w0: float, psi0_deg: float) -> ExperimentConfig:
        """Same experiment, started from another Stage 3 initial condition."""
        profile = YawManeuverProfile.from_ic_pair(
            w0, psi0_deg, t_hover=self.profile.t_hover, t_final=self.profile.t_final
        )
        return replace(self, profile=profile)

    def with_overrides(self, **overrides: Any) -> ExperimentConfig:
        """Copy with the given fields replaced; ``None`` values are ignored."""
        return replace(self, **{k: v for k, v in overrides.items() if v is not None})


def load_config(path: Path) -> ExperimentConfig:
    try:
        document = json.loads(Path(path).read_text(encoding="utf-8"))
    except OSError as e:
        raise OutputFailure(Path(path), e.strerror or str(e)) from e
    except json.JSONDecodeError as e:
        raise InvalidConfiguration(
            f"line {e.lineno}", f"Not valid JSON: {e.msg}.", source=Path(path)
        ) from e
    try:
        return config_from_dict(document)
    except InvalidConfiguration as e:
        raise InvalidConfiguration(e.location, e.problem, source=Path(path)) from e


def config_from_dict(document: Any) -> ExperimentConfig:
    root = _Section("", document)
    defaults = ExperimentConfig()
    params = root.section("params")
    J = params.array("J", shape=(3,))
    rigid_body = RigidBodyParams(
        m=params.number("m", defaults.params.m),
        J=np.diag(J) if J is not None else defaults.params.J,
        g=params.number("g", defaults.params.g),
    )
    params.done()
    gains_benchmark = _gains(root.section("gains_benchmark"), Gains.benchmark(rigid_body.J))
    gains_switching = _gains(root.section("gains_switching"), Gains.switching(rigid_body.J))
    profile = _profile(root.section("profile"))
    hover = root.section("hover")
    hover_gains = HoverGains(
        kp=hover.number("kp", defaults.hover.kp),
        kd=hover.number("kd", defaults.hover.kd),
        z_d=hover.number("z_d", defaults.hover.z_d),
    )
    hover.done()
    config = ExperimentConfig(
        params=rigid_body,
        gains_benchmark=gains_benchmark,
        gains_switching=gains_switching,
        profile=profile,
        dt=root.number("dt", defaults.dt),
        t0_offset=root.number("t0_offset", defaults.t0_offset),
        window=root.number("window", defaults.window),
        mode=root.choice("mode", SimulationMode, defaults.mode),
        hover=hover_gains,
        noise=_noise(root),
        repeats=root.integer("repeats", defaults.repeats),
        rng_seed=root.integer("rng_seed", defaults.rng_seed),
        workers=root.integer("workers", defaults.workers),
        ic_pairs=_ic_pairs(root),
    )
    root.done()
    return config


def _gains(section: _Section, defaults: Gains) -> Gains:
    kq = section.array("Kq", shape=(3,))
    kw = section.array("Kw", shape=(3,))
    gains = Gains(
        Kq=np.diag(kq) if kq is not None else defaults.Kq,
        Kw=np.diag(kw) if kw is not None else defaults.Kw,
        kn=section.number("kn", defaults.kn),
        delta=section.number("delta", defaults.delta),
    )
    section.done()
    return gains


def _profile(section: _Section) -> YawManeuverProfile:
    w0 = section.array("w0", shape=(3,))
    t_final = section.number("t_final", None)
    rate = float(w0[2]) if w0 is not None else 3.0
    profile = YawManeuverProfile.from_ic_pair(
        rate,
        section.number("psi0_deg", 120.0),
        t_hover=section.number("t_hover", 1.0),
        t_final=t_final,
    )
    if w0 is not None and np.any(w0[:2] != 0.0):
        raise InvalidConfiguration("profile.w0", "Yaw maneuvers spin about the body z axis only.")
    section.done()
    return profile


def _noise(root: _Section) -> Optional[NoiseConfig]:
    if root.is_null("noise"):
        return None
    section = root.section("noise")
    defaults = NoiseConfig()
    noise = NoiseConfig(
        omega_sigma=section.number("omega_sigma", defaults.omega_sigma),
        attitude_sigma=math.radians(
            section.number("attitude_sigma_deg", math.degrees(defaults.attitude_sigma))
        ),
    )
    section.done()
    return noise


def _ic_pairs(root: _Section) -> tuple[tuple[float, float], ...]:
    pairs = root.array("ic_pairs", shape=None)
    if pairs is None:
        return DEFAULT_IC_PAIRS
    if pairs.ndim != 2 or pairs.shape[1] != 2:
        raise InvalidConfiguration("ic_pairs", "Expected a list of [w0, psi0_deg] pairs.")
    return tuple((float(w0), float(psi0)) for w0, psi0 in pairs)


T = TypeVar("T")
E = TypeVar("E")


class _Section:
    """Typed, consumption-tracking access to one JSON object of the configuration."""

    def __init__(self, location: str, document: Any):
        if document is None:
            document = {}
        if not isinstance(document, dict):
            raise InvalidConfiguration(location or "<root>", "Expected a JSON object.")
        self._location = location
        self._document = document
        self._seen: set[str] = set()

    def _path(self, key: str) -> str:
        return f"{self._location}.{key}" if self._location else key

    def _get(self, key: str, convert: Callable[[Any], T], default: T, expected: str) -> T:
        self._seen.add(key)
        if key not in self._document or self._document[key] is None:
            return default
        try:
            return convert(self._document[key])
        except (TypeError, ValueError) as e:
            raise InvalidConfiguration(self._path(key), f"Expected {expected}.") from e

    def is_null(self, key: str) -> bool:
        if key in self._document and self._document[key] is None:
            self._seen.add(key)
            return True
        return False

    def section(self, key: str) -> _Section:
        self._seen.add(key)
        return _Section(self._path(key), self._document.get(key))

    def number(self, key: str, default: Any) -> Any:
        return self._get(key, _strict_float, default, "a number")

    def integer(self, key: str, default: int) -> int:
        return self._get(key, _strict_int, default, "an integer")

    def array(self, key: str, shape: Optional[tuple[int, ...]]) -> Optional[np.ndarray]:
        value = self._get(key, lambda v: np.asarray(v, dtype=float), None, "a list of numbers")
        if value is not None and shape is not None and value.shape != shape:
            raise InvalidConfiguration(self._path(key), f"Expected {shape[0]} numbers.")
        return value

    def choice(self, key: str, options: type[E], default: E) -> E:
        names = ", ".join(repr(o.value) for o in options)  # type: ignore[attr-defined]
        return self._get(key, options, default, f"one of {names}")  # type: ignore[arg-type]

    def done(self) -> None:
        unknown = sorted(set(self._document) - self._seen)
        if unknown:
            raise InvalidConfiguration(self._path(unknown[0]), "Unknown configuration key.")


def _strict_float(value: Any) -> float:
    if isinstance(value, bool) or not isinstance(value, (int, float)):
        raise TypeError(value)
    return float(value)


def _strict_int(value: Any) -> int:
    if isinstance(value, bool) or not isinstance(value, int):
        raise TypeError(value)
    return value
