"""Gain extraction and closed-loop assembly."""

import numpy as np
import pytest

from fraclqr import (
    ConfigurationError,
    CostWeights,
    LiftedSystem,
    RiccatiSolution,
    build_lifted,
    close_loop,
    make_order,
    regulator_gains,
    solve_are_spectral,
)
from tests.conftest import OSC_COEFFS, OSC_GAINS


def test_oscillator_gains_match_published_digits(osc_result):
    np.testing.assert_allclose(osc_result.law.gains, OSC_GAINS, atol=1e-3)


def test_scalar_gain(scalar_result):
    np.testing.assert_allclose(scalar_result.law.gains, [3.0], atol=1e-9)
    assert scalar_result.law.control(np.array([2.0])) == pytest.approx(-6.0)


def test_zero_solution_means_zero_control():
    sys_ = LiftedSystem(F=np.array([[-1.0]]), G=np.array([1.0]),
                        Q=np.array([[0.0]]), R=1.0)
    sol, _ = solve_are_spectral(sys_)
    law = regulator_gains(sol, sys_)
    np.testing.assert_allclose(law.gains, [0.0], atol=1e-12)
    assert law.control(np.array([5.0])) == 0.0


def test_closed_loop_coefficients_match_published_digits(osc_result):
    np.testing.assert_allclose(osc_result.closed_loop.coeffs, OSC_COEFFS, atol=1e-3)


def test_zero_gains_reproduce_open_loop():
    sys_ = build_lifted(3.0, 1.0, make_order(1, 3), CostWeights(1, 1))
    law = regulator_gains(RiccatiSolution(S=np.zeros((6, 6)), residual=0.0,
                                          solver="spectral"), sys_)
    cl = close_loop(sys_, law)
    np.testing.assert_array_equal(cl.coeffs, [1, 3, 0, 0, 0, 0])
    np.testing.assert_array_equal(cl.F_cl, sys_.F)


def test_scalar_closed_loop_coefficient(scalar_result):
    np.testing.assert_allclose(scalar_result.closed_loop.F_cl, [[-2.0]], atol=1e-9)
    np.testing.assert_allclose(scalar_result.closed_loop.coeffs, [2.0], atol=1e-9)


def test_additivity_identity(osc_result):
    # c_0 - K_1 = b and c_p - K_{p+1} = a hold exactly by construction
    K = osc_result.law.gains
    coeffs = osc_result.closed_loop.coeffs
    assert abs((coeffs[0] - K[0]) - 1.0) < 1e-9
    assert abs((coeffs[1] - K[1]) - 3.0) < 1e-9
    # and the published digits reproduce the same sums
    assert coeffs[0] == pytest.approx(1.4142, abs=1e-3)
    assert coeffs[1] == pytest.approx(6.5878, abs=1e-3)


def test_closed_loop_only_touches_last_row(osc_result):
    F = osc_result.system.F
    F_cl = osc_result.closed_loop.F_cl
    np.testing.assert_array_equal(F_cl[:-1], F[:-1])
    assert np.any(F_cl[-1] != F[-1])


def test_dimension_mismatch_rejected(osc_result):
    bad = RiccatiSolution(S=np.zeros((2, 2)), residual=0.0, solver="spectral")
    with pytest.raises(ConfigurationError):
        regulator_gains(bad, osc_result.system)
