"""Sampled closed-loop trajectories, quadratic cost, and decay metrics."""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .exceptions import ConfigurationError
from .fracsol import SolutionRepresentation, _mode_values
from .lift import CostWeights
from .synth import ClosedLoop, RegulatorLaw
from .validation import as_real_output

__all__ = ["Trajectory", "CostEstimate", "DecayMetrics", "respond", "cost", "decay_metric"]

#: integrand level at the window end above which the cost is flagged as truncated
TAIL_INTEGRAND_TOL = 1e-6


@dataclass(frozen=True)
class Trajectory:
    x: np.ndarray
    y: np.ndarray
    u: np.ndarray
    meta: dict = field(default_factory=dict)

    def __len__(self):
        return self.x.size


@dataclass(frozen=True)
class CostEstimate:
    value: float
    tail_warning: bool
    last_integrand: float


@dataclass(frozen=True)
class DecayMetrics:
    sup_tail: float
    monotone_envelope: bool
    quarter_maxima: tuple


def respond(cl: ClosedLoop, rep: SolutionRepresentation, law: RegulatorLaw,
            grid: tuple[float, float, int]) -> Trajectory:
    """Sample y and u = -K . z over a uniform grid.

    The state entries D^{j/q} y follow from the eigen-relation, so u is a
    lambda-power combination of the same mode values as y.
    """
    x_start, x_end, n = grid
    if n < 2:
        raise ConfigurationError("grid needs at least 2 samples")
    if x_start < rep.x0:
        raise ConfigurationError(
            f"grid starts at {x_start!r}, before the initial point {rep.x0!r}"
        )
    if x_end <= x_start:
        raise ConfigurationError("x_end must exceed x_start")
    xs = np.linspace(x_start, x_end, n)
    m = law.gains.size
    powers = np.vander(rep.modes.roots, N=m, increasing=True).T
    ys = np.empty(n)
    us = np.empty(n)
    for i, x in enumerate(xs):
        values = rep.c * _mode_values(rep.modes, float(x))
        ys[i] = as_real_output(values.sum())
        state = np.array([as_real_output(v) for v in powers @ values])
        us[i] = law.control(state)
    meta = {"q": rep.q, "x0": rep.x0, "grid": (float(x_start), float(x_end), int(n)),
            "n_states": int(cl.n)}
    return Trajectory(x=xs, y=ys, u=us, meta=meta)


def cost(traj: Trajectory, weights: CostWeights) -> CostEstimate:
    """Trapezoid estimate of (1/2) integral(qw y^2 + rw u^2) over the window.

    A finite window can only underestimate the infinite-horizon cost; the
    ``tail_warning`` flag reports when the integrand has not decayed below
    ``TAIL_INTEGRAND_TOL`` by the last sample.
    """
    if len(traj) < 2:
        raise ConfigurationError("cost needs at least 2 samples")
    integrand = weights.qw * traj.y**2 + weights.rw * traj.u**2
    value = 0.5 * float(np.trapezoid(integrand, traj.x))
    last = float(integrand[-1])
    return CostEstimate(value=value, tail_warning=last > TAIL_INTEGRAND_TOL,
                        last_integrand=last)


def decay_metric(traj: Trajectory) -> DecayMetrics:
    """Quartile envelope of |y|: sup over the last quartile and whether the
    per-quartile running maxima are non-increasing."""
    if len(traj) < 4:
        raise ConfigurationError("decay metric needs at least 4 samples")
    quarters = np.array_split(np.abs(traj.y), 4)
    maxima = tuple(float(qq.max()) for qq in quarters)
    monotone = all(b <= a for a, b in zip(maxima, maxima[1:]))
    return DecayMetrics(sup_tail=maxima[-1], monotone_envelope=monotone,
                        quarter_maxima=maxima)
