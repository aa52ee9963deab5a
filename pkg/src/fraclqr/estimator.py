"""Scikit-learn style estimator wrapping the synthesis pipeline.

``FractionalLQR`` follows the sklearn estimator contract: constructor
arguments are stored verbatim, ``fit`` performs the regulator synthesis
and exposes the results through trailing-underscore attributes, and
``predict`` evaluates the closed-loop output at given time points, so the
object composes with ``clone``, ``get_params``/``set_params`` and friends.

Example
-------
>>> reg = FractionalLQR(alpha=(1, 3), a=3.0, b=1.0).fit()
>>> reg.gains_.round(4)
array([ 0.4142,  3.5878, 12.162 , 13.2864,  9.5964,  4.3809])
>>> y = reg.predict([1.0, 5.0, 10.0])
"""

from __future__ import annotations

import numpy as np
from sklearn.base import BaseEstimator
from sklearn.utils.validation import check_is_fitted

from .exceptions import ConfigurationError
from .lift import CostWeights, DirectPlant, FirstOrderPlant, PhysicalPlant
from .fracsol import eval_solution, eval_state
from .pipeline import DEFAULT_ODD_TOL, solve_initial_conditions, synthesize
from .response import Trajectory, respond

__all__ = ["FractionalLQR"]


class FractionalLQR(BaseEstimator):
    """Optimal regulator synthesis for fractional-order damped oscillators.

    Parameters
    ----------
    alpha : tuple of int
        Fractional order as (numerator, denominator), 0 < alpha < 2,
        alpha != 1.  Orders that are not odd/odd ratios are approximated
        within ``odd_tol``.
    a, b : float, optional
        Direct plant coefficients of ``y'' + a D^alpha y + b y = u``.
    m, s, rho, mu, k : float, optional
        Physical plate/fluid/spring parameters; used when ``a``/``b`` are
        not given.
    beta : float, optional
        First-order plant ``D^alpha y = beta y + u`` (takes precedence
        over the oscillator forms).
    qw, rw : float
        Quadratic cost weights on y and u.
    odd_tol : float or None
        Tolerance of the odd/odd order approximation; None forbids it.
    x0, y1 : float
        Start data: at ``x0 > 0`` the oscillator has y' = y1 with all
        other step-1/q derivatives zero; the first-order plant has
        y(x0) = y1.

    Attributes (after ``fit``)
    --------------------------
    order_, effective_order_ : the requested and the synthesized order.
    gains_ : gain row K of the feedback u = -K . z.
    closed_loop_coeffs_ : scalar closed-loop equation coefficients.
    modes_ : closed-loop characteristic roots.
    stability_ : StabilityReport with both root criteria.
    result_ : full SynthesisResult.
    representation_ : mode-coefficient solution representation.
    """

    def __init__(self, alpha=(1, 3), a=None, b=None, m=None, s=None, rho=None,
                 mu=None, k=None, beta=None, qw=1.0, rw=1.0,
                 odd_tol=DEFAULT_ODD_TOL, x0=0.1, y1=1.0):
        self.alpha = alpha
        self.a = a
        self.b = b
        self.m = m
        self.s = s
        self.rho = rho
        self.mu = mu
        self.k = k
        self.beta = beta
        self.qw = qw
        self.rw = rw
        self.odd_tol = odd_tol
        self.x0 = x0
        self.y1 = y1

    def _plant(self):
        if self.beta is not None:
            return FirstOrderPlant(beta=self.beta)
        if self.a is not None or self.b is not None:
            if self.a is None or self.b is None:
                raise ConfigurationError("direct plants need both a and b")
            return DirectPlant(a=self.a, b=self.b)
        physical = (self.m, self.s, self.rho, self.mu, self.k)
        if any(v is None for v in physical):
            raise ConfigurationError(
                "specify a plant: beta, (a, b), or all of (m, s, rho, mu, k)"
            )
        return PhysicalPlant(m=self.m, s=self.s, rho=self.rho, mu=self.mu, k=self.k)

    def fit(self, X=None, y=None):
        """Synthesize the regulator; X and y are ignored (problem data come
        from the constructor parameters)."""
        result = synthesize(self.alpha, self._plant(),
                            CostWeights(qw=self.qw, rw=self.rw),
                            odd_tol=self.odd_tol)
        self.result_ = result
        self.order_ = result.requested_order
        self.effective_order_ = result.order
        self.gains_ = result.law.gains.copy()
        self.closed_loop_coeffs_ = result.closed_loop.coeffs.copy()
        self.char_poly_ = result.char_coeffs.copy()
        self.modes_ = result.modes.roots.copy()
        self.stability_ = result.report
        self.riccati_residual_ = result.riccati.residual
        self.representation_ = solve_initial_conditions(result, self.x0, self.y1)
        return self

    def _times(self, X) -> np.ndarray:
        X = np.asarray(X, dtype=float)
        if X.ndim == 2 and X.shape[1] == 1:
            X = X[:, 0]
        if X.ndim != 1:
            raise ConfigurationError(f"expected 1-d time points, got shape {X.shape}")
        if np.any(X <= 0):
            raise ConfigurationError("time points must be > 0")
        return X

    def predict(self, X) -> np.ndarray:
        """Closed-loop output y at the given time points (1-d or column)."""
        check_is_fitted(self, "representation_")
        times = self._times(X)
        return np.array([eval_solution(self.representation_, t) for t in times])

    def control(self, X) -> np.ndarray:
        """Feedback control u = -K . z along the closed-loop solution."""
        check_is_fitted(self, "representation_")
        times = self._times(X)
        gains = self.result_.law.gains
        return np.array([
            -float(np.dot(gains, eval_state(self.representation_, t, gains.size)))
            for t in times
        ])

    def simulate(self, x_end, n=200, x_start=None) -> Trajectory:
        """Uniform-grid closed-loop trajectory from x_start (default x0)."""
        check_is_fitted(self, "representation_")
        start = self.x0 if x_start is None else x_start
        return respond(self.result_.closed_loop, self.representation_,
                       self.result_.law, (start, x_end, n))
