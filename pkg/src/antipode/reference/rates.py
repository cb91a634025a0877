from __future__ import annotations

from typing import Any

import numpy as np

from antipode.quat import Vec3, ensure_unit, qinv, qmul, to_rotmatrix
from antipode.reference.errors import InconsistentReference

TANGENT_TOLERANCE = 1e-6


def desired_rate_tilde(qd: Any, qd_dot: Any) -> Vec3:
    """Desired body rate in B_d coordinates, from ``(0, w̃_d) = 2 qd⁻¹ ⊗ qd_dot``."""
    qd = ensure_unit(qd)
    product = 2.0 * qmul(qinv(qd), qd_dot)
    scalar = np.abs(product[..., 0])
    if np.any(scalar > TANGENT_TOLERANCE):
        first = int(np.argmax(np.ravel(scalar)))
        raise InconsistentReference(qd.reshape(-1, 4)[first], float(np.ravel(scalar)[first]))
    return product[..., 1:]


def map_desired_rate(q: Any, qd: Any, wtilde: Any) -> Vec3:
    """Express the B_d-frame desired rate in the measured body frame: ``Rᵀ R_d w̃_d``."""
    return np.einsum(
        "...ji,...jk,...k->...i", to_rotmatrix(q), to_rotmatrix(qd), np.asarray(wtilde, dtype=float)
    )
