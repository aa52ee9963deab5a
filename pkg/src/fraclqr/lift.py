"""Companion-form lifting of the damped-oscillator plant.

The plant ``y'' + a D^alpha y + b y = u`` with ``alpha = p/q`` odd/odd is
rewritten over the step-``1/q`` state ``z_j = D^{j/q} y`` (j = 0..2q-1) as a
first-order normal system ``D^{1/q} z = F z + G u`` with a companion matrix
``F``.  The quadratic cost weights ``qw`` (on y) and ``rw`` (on u) become
``Q = qw * e0 e0'`` and the scalar ``R = rw``.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .exceptions import ConfigurationError
from .order import OddRationalOrder
from .validation import check_nonnegative, check_positive, check_scalar

__all__ = [
    "PhysicalPlant",
    "DirectPlant",
    "FirstOrderPlant",
    "PlantParams",
    "CostWeights",
    "LiftedSystem",
    "InitialConditions",
    "plant_coeffs",
    "build_lifted",
    "companion_lift",
    "build_first_order_synthesis",
    "open_loop_charpoly",
    "expand_initial_conditions",
]


@dataclass(frozen=True)
class PhysicalPlant:
    """Rigid plate of mass ``m`` and area ``s`` on a spring (constant ``k``)
    in a fluid of density ``rho`` with viscosity constant ``mu``."""

    m: float
    s: float
    rho: float
    mu: float
    k: float


@dataclass(frozen=True)
class DirectPlant:
    """Plant given directly by damping ``a`` and stiffness ``b``."""

    a: float
    b: float


@dataclass(frozen=True)
class FirstOrderPlant:
    """Scalar plant ``D^alpha y = beta * y + u``."""

    beta: float


PlantParams = PhysicalPlant | DirectPlant


@dataclass(frozen=True)
class CostWeights:
    """Weights of the quadratic cost (1/2) * integral(qw*y^2 + rw*u^2)."""

    qw: float = 1.0
    rw: float = 1.0

    def __post_init__(self):
        check_positive("qw", self.qw)
        check_positive("rw", self.rw)


def plant_coeffs(params: PlantParams) -> tuple[float, float]:
    """Return the oscillator coefficients ``(a, b)``.

    For a physical plant, ``a = 2 s sqrt(mu rho) / m`` and ``b = k / m``;
    a ``DirectPlant`` passes its values through.
    """
    if isinstance(params, DirectPlant):
        a = check_nonnegative("a", params.a)
        b = check_nonnegative("b", params.b)
        return a, b
    if not isinstance(params, PhysicalPlant):
        raise ConfigurationError(f"unsupported plant parameters: {params!r}")
    m = check_positive("m", params.m)
    s = check_nonnegative("s", params.s)
    k = check_nonnegative("k", params.k)
    mu = check_scalar("mu", params.mu)
    rho = check_scalar("rho", params.rho)
    if mu * rho < 0:
        raise ConfigurationError("mu * rho must be nonnegative")
    a = 2.0 * s * np.sqrt(mu * rho) / m
    b = k / m
    return a, b


@dataclass(frozen=True)
class LiftedSystem:
    """State-cost quadruple (F, G, Q, R) for regulator synthesis.

    Oscillator liftings have dimension ``n = 2q`` with companion ``F``;
    the first-order scalar synthesis system has ``n = 1``.  ``order`` is
    carried for bookkeeping when the system came from a fractional plant.
    """

    F: np.ndarray
    G: np.ndarray
    Q: np.ndarray
    R: float
    order: OddRationalOrder | None = None
    meta: dict = field(default_factory=dict)

    @property
    def n(self) -> int:
        return self.F.shape[0]


def companion_lift(a: float, b: float, p: int, q: int, weights: CostWeights) -> LiftedSystem:
    """Companion system of ``(D^{1/q})^{2q} y + a (D^{1/q})^p y + b y = u``.

    ``p`` and ``q`` are taken as given (no parity checks) so classical
    second-order plants can be produced with ``p = q = 1``.
    """
    if q < 1 or not 1 <= p < 2 * q:
        raise ConfigurationError(f"invalid lifting exponents p={p}, q={q}")
    a = check_nonnegative("a", a)
    b = check_nonnegative("b", b)
    n = 2 * q
    F = np.zeros((n, n))
    F[np.arange(n - 1), np.arange(1, n)] = 1.0
    F[n - 1, 0] -= b
    F[n - 1, p] -= a
    G = np.zeros(n)
    G[n - 1] = 1.0
    Q = np.zeros((n, n))
    Q[0, 0] = weights.qw
    return LiftedSystem(F=F, G=G, Q=Q, R=weights.rw, meta={"a": a, "b": b, "p": p, "q": q})


def build_lifted(a: float, b: float, order: OddRationalOrder, weights: CostWeights) -> LiftedSystem:
    """Lift the oscillator plant for a validated odd/odd order."""
    if not isinstance(order, OddRationalOrder):
        raise ConfigurationError("build_lifted requires an OddRationalOrder")
    sys_ = companion_lift(a, b, order.p, order.q, weights)
    return LiftedSystem(F=sys_.F, G=sys_.G, Q=sys_.Q, R=sys_.R, order=order, meta=sys_.meta)


def build_first_order_synthesis(plant: FirstOrderPlant, order: OddRationalOrder,
                                weights: CostWeights) -> LiftedSystem:
    """Scalar synthesis system for ``D^alpha y = beta y + u``.

    The regulator design treats ``D^alpha y`` as the driven state
    derivative, so the Riccati problem is one-dimensional regardless of
    the order; the order re-enters in the closed-loop modal analysis,
    where the closed-loop scalar equation lifts to a p-dimensional
    companion system with step 1/q.
    """
    beta = check_scalar("beta", plant.beta)
    F = np.array([[beta]])
    G = np.array([1.0])
    Q = np.array([[weights.qw]])
    return LiftedSystem(F=F, G=G, Q=Q, R=weights.rw, order=order,
                        meta={"beta": beta, "p": order.p, "q": order.q,
                              "first_order": True})


def open_loop_charpoly(sys_: LiftedSystem) -> np.ndarray:
    """Monic coefficients of ``lambda^{2q} + a lambda^p + b`` (powers 2q..0).

    Equals the characteristic polynomial of the companion ``F`` by
    construction; the numerical eigenvalue route is cross-checked in the
    test suite.
    """
    meta = sys_.meta
    if "a" not in meta:
        raise ConfigurationError("open_loop_charpoly requires an oscillator lifting")
    n = sys_.n
    coeffs = np.zeros(n + 1)
    coeffs[0] = 1.0
    coeffs[n] = meta["b"]
    coeffs[n - meta["p"]] = meta["a"]
    return coeffs


@dataclass(frozen=True)
class InitialConditions:
    """Values of ``D^{m/q} y`` at ``x0 > 0`` for m = 0..len(values)-1."""

    x0: float
    values: np.ndarray

    def __post_init__(self):
        check_positive("x0", self.x0)
        object.__setattr__(self, "values", np.asarray(self.values, dtype=float))


def expand_initial_conditions(x0: float, y1: float, q: int) -> InitialConditions:
    """Oscillator start data: all step-1/q derivatives zero except y' = y1."""
    values = np.zeros(2 * q)
    values[q] = check_scalar("y1", y1)
    return InitialConditions(x0=x0, values=values)
