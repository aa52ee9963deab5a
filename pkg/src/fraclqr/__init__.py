"""fraclqr: optimal regulator synthesis for fractional-order oscillators
with liquid dampers, with Mittag-Leffler-type closed-loop response analysis.

The package lifts the scalar plant ``y'' + a D^alpha y + b y = u``
(``alpha = p/q`` a ratio of odd integers in (0, 2) \\ {1}) to a companion
normal system in the step-1/q derivative, solves the algebraic Riccati
equation through the Hamiltonian's stable invariant subspace, closes the
loop, and evaluates the closed-loop response through fractional
exponentials.  ``FractionalLQR`` packages the pipeline behind a
scikit-learn style fit/predict interface; the ``fraclqr`` CLI drives the
same pipeline from JSON configs.
"""

from .estimator import FractionalLQR
from .exceptions import (
    ConfigurationError,
    DegenerateRoots,
    FracLQRError,
    ImaginaryAxisEigenvalue,
    NoConvergence,
    NonConvergence,
    NumericalError,
    SingularT1,
    VanishingModeValue,
)
from .fracsol import (
    SolutionRepresentation,
    eval_solution,
    eval_state,
    frac_exp_closed,
    frac_exp_series,
    ic_coefficients,
    weak_singular_integral,
)
from .lift import (
    CostWeights,
    DirectPlant,
    FirstOrderPlant,
    InitialConditions,
    LiftedSystem,
    PhysicalPlant,
    build_first_order_synthesis,
    build_lifted,
    companion_lift,
    expand_initial_conditions,
    open_loop_charpoly,
    plant_coeffs,
)
from .modal import ModeSet, StabilityReport, char_poly, classify_stability, poly_roots
from .order import OddRationalOrder, RationalOrder, make_order, odd_approximate
from .pipeline import SynthesisResult, solve_initial_conditions, synthesize
from .response import Trajectory, cost, decay_metric, respond
from .riccati import (
    HamiltonianDecomposition,
    RiccatiSolution,
    are_residual,
    build_hamiltonian,
    solve_are_sign,
    solve_are_spectral,
)
from .synth import ClosedLoop, RegulatorLaw, close_loop, regulator_gains

__version__ = "0.1.0"

__all__ = [
    "FractionalLQR",
    "FracLQRError",
    "ConfigurationError",
    "NumericalError",
    "ImaginaryAxisEigenvalue",
    "SingularT1",
    "NoConvergence",
    "NonConvergence",
    "DegenerateRoots",
    "VanishingModeValue",
    "RationalOrder",
    "OddRationalOrder",
    "make_order",
    "odd_approximate",
    "PhysicalPlant",
    "DirectPlant",
    "FirstOrderPlant",
    "CostWeights",
    "LiftedSystem",
    "InitialConditions",
    "plant_coeffs",
    "build_lifted",
    "companion_lift",
    "build_first_order_synthesis",
    "open_loop_charpoly",
    "expand_initial_conditions",
    "HamiltonianDecomposition",
    "RiccatiSolution",
    "build_hamiltonian",
    "solve_are_spectral",
    "solve_are_sign",
    "are_residual",
    "RegulatorLaw",
    "ClosedLoop",
    "regulator_gains",
    "close_loop",
    "ModeSet",
    "StabilityReport",
    "char_poly",
    "poly_roots",
    "classify_stability",
    "SolutionRepresentation",
    "frac_exp_series",
    "frac_exp_closed",
    "weak_singular_integral",
    "ic_coefficients",
    "eval_solution",
    "eval_state",
    "Trajectory",
    "respond",
    "cost",
    "decay_metric",
    "SynthesisResult",
    "synthesize",
    "solve_initial_conditions",
]
