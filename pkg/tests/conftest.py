import numpy as np
import pytest

from fraclqr import CostWeights, DirectPlant, FirstOrderPlant
from fraclqr.pipeline import solve_initial_conditions, synthesize

# gain row printed in the worked oscillator example (4-5 significant digits)
OSC_GAINS = np.array([0.4142, 3.5878, 12.162, 13.2864, 9.5964, 4.3809])
# closed-loop coefficients c_0..c_5 of the same example
OSC_COEFFS = np.array([1.4142, 6.5878, 12.162, 13.2864, 9.5964, 4.3809])


@pytest.fixture(scope="session")
def osc_result():
    """alpha = 1/3, a = 3, b = 1, qw = rw = 1 (the 6-state oscillator case)."""
    return synthesize((1, 3), DirectPlant(a=3.0, b=1.0), CostWeights(1.0, 1.0))


@pytest.fixture(scope="session")
def osc_representation(osc_result):
    """Start data x0 = 0.1 with y' = 1 and all other step-1/3 derivatives zero."""
    return solve_initial_conditions(osc_result, 0.1, 1.0)


@pytest.fixture(scope="session")
def scalar_result():
    """D^{1/2} y = y + u with weights (3, 1), synthesized through the odd/odd
    approximation 3/7 of the order 1/2."""
    return synthesize((1, 2), FirstOrderPlant(beta=1.0), CostWeights(3.0, 1.0),
                      odd_tol=0.08)
