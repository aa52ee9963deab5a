"""End-to-end synthesis and response pipelines shared by the estimator and CLI."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .exceptions import ConfigurationError, ImaginaryAxisEigenvalue
from .fracsol import SolutionRepresentation, ic_coefficients
from .lift import (
    CostWeights,
    FirstOrderPlant,
    InitialConditions,
    LiftedSystem,
    PlantParams,
    build_first_order_synthesis,
    build_lifted,
    expand_initial_conditions,
    plant_coeffs,
)
from .modal import ModeSet, StabilityReport, char_poly, classify_stability, poly_roots
from .order import OddRationalOrder, RationalOrder, make_order, odd_approximate
from .riccati import HamiltonianDecomposition, RiccatiSolution, solve_are_spectral
from .synth import ClosedLoop, RegulatorLaw, close_loop, regulator_gains

__all__ = ["SynthesisResult", "synthesize", "solve_initial_conditions"]

DEFAULT_ODD_TOL = 1e-3


@dataclass(frozen=True)
class SynthesisResult:
    requested_order: RationalOrder
    order: OddRationalOrder
    plant: object
    weights: CostWeights
    system: LiftedSystem
    riccati: RiccatiSolution
    decomposition: HamiltonianDecomposition
    law: RegulatorLaw
    closed_loop: ClosedLoop
    char_coeffs: np.ndarray
    modes: ModeSet
    report: StabilityReport

    @property
    def first_order(self) -> bool:
        return isinstance(self.plant, FirstOrderPlant)


def _effective_order(order: RationalOrder, odd_tol: float | None) -> OddRationalOrder:
    if order.is_odd_odd:
        return order if isinstance(order, OddRationalOrder) else OddRationalOrder(order.p, order.q)
    if odd_tol is None or odd_tol <= 0:
        # The spectral mirror symmetry underpinning the synthesis holds only
        # for odd/odd orders; refusing here surfaces the same failure mode
        # as an imaginary-axis Hamiltonian spectrum.
        raise ImaginaryAxisEigenvalue(
            f"order {order} is not a ratio of odd integers and approximation is "
            "disabled; the Hamiltonian spectral symmetry required for synthesis "
            "does not transfer to even orders"
        )
    return odd_approximate(order, odd_tol)


def synthesize(alpha, plant: PlantParams | FirstOrderPlant,
               weights: CostWeights | None = None,
               odd_tol: float | None = DEFAULT_ODD_TOL) -> SynthesisResult:
    """Run order validation, lifting, Riccati synthesis and modal analysis.

    ``alpha`` may be a ``RationalOrder`` or a ``(num, den)`` pair.  Orders
    that are not odd/odd are replaced by their odd/odd approximation within
    ``odd_tol`` (pass ``odd_tol=None`` or 0 to forbid the substitution).
    """
    if weights is None:
        weights = CostWeights()
    if isinstance(alpha, RationalOrder):
        requested = alpha
    else:
        try:
            num, den = alpha
        except (TypeError, ValueError):
            raise ConfigurationError(f"alpha must be (num, den) or RationalOrder, got {alpha!r}")
        requested = make_order(int(num), int(den))
    order = _effective_order(requested, odd_tol)

    if isinstance(plant, FirstOrderPlant):
        system = build_first_order_synthesis(plant, order, weights)
    else:
        a, b = plant_coeffs(plant)
        system = build_lifted(a, b, order, weights)

    solution, decomposition = solve_are_spectral(system)
    law = regulator_gains(solution, system)
    cl = close_loop(system, law)

    if isinstance(plant, FirstOrderPlant):
        # closed loop D^{p/q} y = (beta - K) y lifts to a degree-p companion
        coeffs = np.zeros(order.p + 1)
        coeffs[0] = 1.0
        coeffs[-1] = cl.coeffs[0]
    else:
        coeffs = char_poly(cl)
    modes = poly_roots(coeffs, q=order.q)
    report = classify_stability(modes)
    return SynthesisResult(
        requested_order=requested,
        order=order,
        plant=plant,
        weights=weights,
        system=system,
        riccati=solution,
        decomposition=decomposition,
        law=law,
        closed_loop=cl,
        char_coeffs=coeffs,
        modes=modes,
        report=report,
    )


def solve_initial_conditions(result: SynthesisResult, x0: float, y1: float) -> SolutionRepresentation:
    """Mode coefficients for the standard start data.

    Oscillator: all step-1/q derivatives vanish at x0 except y'(x0) = y1.
    First-order plant: the single datum y(x0) = y1 selects the real-root
    mode profile (D^{m/q} y(x0) = lambda_real^m y1), matching the
    real-exponent solution the scalar problem is normalized to.
    """
    if result.first_order:
        roots = result.modes.roots
        real_mask = np.abs(roots.imag) <= 1e-10 * (1.0 + np.abs(roots))
        if not np.any(real_mask):
            raise ConfigurationError("first-order closed loop has no real mode")
        lam = complex(roots[np.argmax(real_mask)])
        values = np.array([(lam**m).real * y1 for m in range(result.modes.n)])
        ics = InitialConditions(x0=x0, values=values)
    else:
        ics = expand_initial_conditions(x0, y1, result.order.q)
    return ic_coefficients(result.modes, ics)
