"""Lyapunov functions of the two closed-loop subsystems of the switching controller.

For ``σ = ±1`` the subsystem drives ``q_e`` to ``σ·(1, 0, 0, 0)`` and ``ν_σ = ω_e + σ k_n n_e`` to
zero, and

    V_σ = ½ ν_σᵀ (K_q⁻¹ J) ν_σ + 2 (1 − σ m_e)

decreases along it. The switching function ``Λ = V₋₁ − V₊₁`` tells which of the two functions is
currently the smaller one.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Any

import numpy as np
import numpy.typing as npt

from antipode.control import Gains, as_diagonal, ensure_switch_sign
from antipode.quat import Quaternion, Vec3, pure, qmul

Scalar = npt.NDArray[np.float64]

REGION_OF_ATTRACTION_LEVEL = 4.0


def lyapunov_v(sigma: Any, qe: Any, nu: Any, Kq: Any, J: Any) -> Scalar:
    """``V_σ``; ``nu`` must have been built with the same ``sigma``."""
    sigma = ensure_switch_sign(sigma)
    qe = np.asarray(qe, dtype=float)
    nu = np.asarray(nu, dtype=float)
    weights = as_diagonal("J", J) / as_diagonal("Kq", Kq)
    return 0.5 * np.sum(weights * nu * nu, axis=-1) + 2.0 * (1.0 - sigma * qe[..., 0])


def lyapunov_bounds(sigma: Any, qe: Any, nu: Any, Kq: Any, J: Any) -> tuple[Scalar, Scalar]:
    """Quadratic bounds ``(w_lo, w_hi)`` built from the extreme eigenvalues of ``K_q⁻¹ J``.

    The quadratic term is taken without the ½ of ``V_σ``, so ``w_lo`` is not a lower bound of
    ``V_σ`` in general; only ``w_lo ≤ w_hi`` and positive definiteness hold.
    """
    sigma = ensure_switch_sign(sigma)
    qe = np.asarray(qe, dtype=float)
    nu = np.asarray(nu, dtype=float)
    weights = as_diagonal("J", J) / as_diagonal("Kq", Kq)
    squared = np.sum(nu * nu, axis=-1)
    attitude = 2.0 * (1.0 - sigma * qe[..., 0])
    return weights.min() * squared + attitude, weights.max() * squared + attitude


def lyapunov_vdot(sigma: Any, qe: Any, nu: Any, Kq: Any, Kw: Any, kn: float) -> Scalar:
    """``V̇_σ = −ν_σᵀ K_q⁻¹ K_ω ν_σ − k_n n_eᵀ n_e`` along the active subsystem."""
    ensure_switch_sign(sigma)
    n = np.asarray(qe, dtype=float)[..., 1:]
    nu = np.asarray(nu, dtype=float)
    weights = as_diagonal("Kw", Kw) / as_diagonal("Kq", Kq)
    return -np.sum(weights * nu * nu, axis=-1) - kn * np.sum(n * n, axis=-1)


def lambda_fn(qe: Any, we: Any, Kq: Any, J: Any, kn: float) -> Scalar:
    """Switching function ``Λ = −2 k_n ω_eᵀ K_q⁻¹ J n_e + 4 m_e``, equal to ``V₋₁ − V₊₁``."""
    qe = np.asarray(qe, dtype=float)
    we = np.asarray(we, dtype=float)
    weights = as_diagonal("J", J) / as_diagonal("Kq", Kq)
    return -2.0 * kn * np.sum(we * weights * qe[..., 1:], axis=-1) + 4.0 * qe[..., 0]


def in_region_of_attraction(
    sigma: Any, qe: Any, nu: Any, Kq: Any, J: Any
) -> npt.NDArray[np.bool_]:
    """Conservative basin membership of the ``σ`` subsystem: ``V_σ < 4``."""
    return lyapunov_v(sigma, qe, nu, Kq, J) < REGION_OF_ATTRACTION_LEVEL


def subsystem_rates(sigma: Any, qe: Any, nu: Any, gains: Gains, J: Any) -> tuple[Quaternion, Vec3]:
    """Closed-loop ``(q̇_e, ν̇_σ)`` of the ``σ`` subsystem under the switching law.

    Both vanish exactly at the subsystem's fixed points ``(σ·(1, 0, 0, 0), 0)``.
    """
    sigma = ensure_switch_sign(sigma)[..., None]
    qe = np.asarray(qe, dtype=float)
    nu = np.asarray(nu, dtype=float)
    n = qe[..., 1:]
    we = nu - sigma * gains.kn * n
    qe_dot = 0.5 * qmul(pure(we), qe)
    nu_dot = -(sigma * gains.kq * n + gains.kw * nu) / as_diagonal("J", J)
    return qe_dot, nu_dot


@dataclass(frozen=True, eq=False)
class LyapunovSample:
    v_plus: Scalar
    v_minus: Scalar
    lambda_: Scalar
    vdot_active: Scalar

    def v(self, sigma: Any) -> Scalar:
        """Value of the Lyapunov function that belongs to ``sigma``."""
        return np.where(ensure_switch_sign(sigma) > 0, self.v_plus, self.v_minus)


def lyapunov_sample(qe: Any, we: Any, sigma: Any, gains: Gains, J: Any) -> LyapunovSample:
    """Evaluates both Lyapunov functions, each with its own ``ν_σ``, at one error state."""
    sigma = ensure_switch_sign(sigma)
    qe = np.asarray(qe, dtype=float)
    we = np.asarray(we, dtype=float)
    kn_n = gains.kn * qe[..., 1:]
    nu_plus, nu_minus = we + kn_n, we - kn_n
    nu_active = np.where((sigma > 0)[..., None], nu_plus, nu_minus)
    return LyapunovSample(
        v_plus=lyapunov_v(1, qe, nu_plus, gains.kq, J),
        v_minus=lyapunov_v(-1, qe, nu_minus, gains.kq, J),
        lambda_=lambda_fn(qe, we, gains.kq, J, gains.kn),
        vdot_active=lyapunov_vdot(sigma, qe, nu_active, gains.kq, gains.kw, gains.kn),
    )
