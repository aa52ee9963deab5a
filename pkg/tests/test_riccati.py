"""Hamiltonian assembly and the two Riccati solvers.

Covers: block layout, the worked scalar case (S = 3, stable eigenvalue -2),
the 6-state oscillator gain row, mirror spectrum, closed-loop/stable-half
agreement, cross-solver consistency, residual values, (Q, R) scaling, and
the imaginary-axis rejection path.
"""

import numpy as np
import pytest

from fraclqr import (
    CostWeights,
    ImaginaryAxisEigenvalue,
    LiftedSystem,
    are_residual,
    build_hamiltonian,
    build_lifted,
    companion_lift,
    make_order,
    solve_are_sign,
    solve_are_spectral,
)
from tests.conftest import OSC_GAINS

W = CostWeights(1.0, 1.0)

SCALAR = LiftedSystem(F=np.array([[1.0]]), G=np.array([1.0]),
                      Q=np.array([[3.0]]), R=1.0)
ALREADY_STABLE = LiftedSystem(F=np.array([[-1.0]]), G=np.array([1.0]),
                              Q=np.array([[0.0]]), R=1.0)


def random_system(rng):
    q = int(rng.choice([1, 3, 5]))
    p = int(rng.choice(np.arange(1, 2 * q, 2)))
    a, b = rng.uniform(0, 10, size=2)
    weights = CostWeights(*rng.uniform(0.1, 10, size=2))
    return companion_lift(a, b, p, q, weights)


def test_hamiltonian_scalar_block_layout():
    np.testing.assert_allclose(build_hamiltonian(SCALAR), [[1, -1], [-3, -1]])


def test_hamiltonian_oscillator_blocks(osc_result):
    H = build_hamiltonian(osc_result.system)
    assert H.shape == (12, 12)
    upper_right = np.zeros((6, 6))
    upper_right[5, 5] = -1.0
    np.testing.assert_allclose(H[:6, 6:], upper_right)
    np.testing.assert_allclose(H[:6, :6], osc_result.system.F)
    np.testing.assert_allclose(H[6:, :6], -osc_result.system.Q)
    np.testing.assert_allclose(H[6:, 6:], -osc_result.system.F.T)


def test_hamiltonian_block_diagonal_when_uncoupled():
    sys_ = LiftedSystem(F=np.array([[2.0]]), G=np.array([0.0]),
                        Q=np.array([[0.0]]), R=1.0)
    np.testing.assert_allclose(build_hamiltonian(sys_), [[2, 0], [0, -2]])


def test_scalar_example_spectral():
    sol, decomp = solve_are_spectral(SCALAR)
    np.testing.assert_allclose(sol.S, [[3.0]], atol=1e-9)
    np.testing.assert_allclose(decomp.stable_eigenvalues, [-2.0], atol=1e-9)
    gains = sol.S[-1] / SCALAR.R
    np.testing.assert_allclose(gains, [3.0], atol=1e-9)


def test_scalar_example_sign():
    sol = solve_are_sign(SCALAR)
    np.testing.assert_allclose(sol.S, [[3.0]], atol=1e-9)


def test_stable_costfree_system_gives_zero():
    sol, _ = solve_are_spectral(ALREADY_STABLE)
    np.testing.assert_allclose(sol.S, [[0.0]], atol=1e-12)
    sol2 = solve_are_sign(ALREADY_STABLE)
    np.testing.assert_allclose(sol2.S, [[0.0]], atol=1e-10)


def test_oscillator_gain_row_matches_published_digits(osc_result):
    np.testing.assert_allclose(osc_result.riccati.S[-1], OSC_GAINS, atol=1e-3)


def test_residual_values():
    assert are_residual(np.array([[3.0]]), SCALAR) < 1e-12
    assert are_residual(np.array([[0.0]]), ALREADY_STABLE) == 0.0
    assert np.isclose(are_residual(np.array([[1.0]]), SCALAR), 4.0)


def test_residual_dimension_mismatch():
    with pytest.raises(ValueError):
        are_residual(np.eye(2), SCALAR)


def test_imaginary_axis_rejection():
    sys_ = LiftedSystem(F=np.array([[0.0]]), G=np.array([0.0]),
                        Q=np.array([[1.0]]), R=1.0)
    with pytest.raises(ImaginaryAxisEigenvalue):
        solve_are_spectral(sys_)
    with pytest.raises(ImaginaryAxisEigenvalue):
        solve_are_sign(sys_)


def test_mirror_spectrum_on_random_instances():
    rng = np.random.default_rng(11)
    for _ in range(20):
        sys_ = random_system(rng)
        if sys_.n > 12:
            continue
        eigs = np.linalg.eigvals(build_hamiltonian(sys_))
        for mu in eigs:
            assert np.min(np.abs(eigs + mu)) <= 1e-8 * max(1.0, abs(mu))


def test_closed_loop_spectrum_equals_stable_half(osc_result):
    sys_ = osc_result.system
    sol, decomp = solve_are_spectral(sys_)
    F_cl = sys_.F - np.outer(sys_.G, sys_.G @ sol.S) / sys_.R
    cl = np.linalg.eigvals(F_cl)
    cl = cl[np.lexsort((cl.imag, cl.real))]
    assert np.max(np.abs(cl - decomp.stable_eigenvalues)) <= 1e-6


def test_cross_solver_agreement():
    rng = np.random.default_rng(23)
    for _ in range(15):
        sys_ = random_system(rng)
        spectral, _ = solve_are_spectral(sys_)
        sign = solve_are_sign(sys_)
        norm = np.linalg.norm(spectral.S)
        assert np.linalg.norm(spectral.S - sign.S) <= 1e-6 * max(1.0, norm)


def test_cost_scaling_leaves_gain_invariant():
    order = make_order(1, 3)
    base = build_lifted(2.0, 5.0, order, CostWeights(1.3, 0.7))
    sol_base, _ = solve_are_spectral(base)
    for c in (0.1, 4.0, 25.0):
        scaled = build_lifted(2.0, 5.0, order, CostWeights(1.3 * c, 0.7 * c))
        sol_scaled, _ = solve_are_spectral(scaled)
        np.testing.assert_allclose(sol_scaled.S, c * sol_base.S,
                                   atol=1e-8 * max(1.0, c * np.linalg.norm(sol_base.S)))
        gain_base = sol_base.S[-1] / base.R
        gain_scaled = sol_scaled.S[-1] / scaled.R
        np.testing.assert_allclose(gain_scaled, gain_base, atol=1e-8)


def test_solutions_are_symmetric_psd(osc_result):
    S = osc_result.riccati.S
    np.testing.assert_allclose(S, S.T, atol=1e-12)
    assert np.min(np.linalg.eigvalsh(S)) >= -1e-8 * np.linalg.norm(S)
    assert osc_result.riccati.residual <= 1e-6 * max(1.0, np.linalg.norm(S) ** 2)
