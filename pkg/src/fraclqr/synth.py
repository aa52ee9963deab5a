"""Regulator gains and closed-loop assembly.

The feedback law reads the last row of the Riccati solution:

    u = -(1/rw) * [t_{n,1} y + t_{n,2} D^{1/q} y + ... + t_{n,n} D^{(n-1)/q} y]

Closing the loop is a rank-one update of the companion's last row, giving
the scalar equation ``D^{n/q} y + sum_j c_j D^{j/q} y = 0`` with
``c_0 = b + K_1``, ``c_p = a + K_{p+1}`` and ``c_j = K_{j+1}`` elsewhere.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .exceptions import ConfigurationError
from .lift import LiftedSystem
from .riccati import RiccatiSolution

__all__ = ["RegulatorLaw", "ClosedLoop", "regulator_gains", "close_loop"]


@dataclass(frozen=True)
class RegulatorLaw:
    """Gain row K of the state feedback u = -K . z."""

    gains: np.ndarray
    rw: float

    def control(self, state: np.ndarray) -> float:
        return -float(np.dot(self.gains, state))


@dataclass(frozen=True)
class ClosedLoop:
    """Closed-loop matrix F - G K and scalar-equation coefficients c_0..c_{n-1}."""

    F_cl: np.ndarray
    coeffs: np.ndarray

    @property
    def n(self) -> int:
        return self.F_cl.shape[0]


def regulator_gains(solution: RiccatiSolution, sys_: LiftedSystem) -> RegulatorLaw:
    """Extract K = (1/rw) * (last row of S)."""
    S = solution.S
    if S.shape != (sys_.n, sys_.n):
        raise ConfigurationError(
            f"Riccati solution is {S.shape}, system has dimension {sys_.n}"
        )
    gains = S[-1] / sys_.R
    return RegulatorLaw(gains=gains, rw=sys_.R)


def close_loop(sys_: LiftedSystem, law: RegulatorLaw) -> ClosedLoop:
    """Apply u = -K z; only the companion's last row changes."""
    if law.gains.shape != (sys_.n,):
        raise ConfigurationError(
            f"gain row has length {law.gains.shape}, system dimension is {sys_.n}"
        )
    F_cl = sys_.F - np.outer(sys_.G, law.gains)
    coeffs = -F_cl[-1].copy()
    return ClosedLoop(F_cl=F_cl, coeffs=coeffs)
