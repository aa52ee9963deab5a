"""Characteristic polynomial, roots, and the two stability criteria."""

import numpy as np
import pytest

from fraclqr import (
    ClosedLoop,
    DegenerateRoots,
    char_poly,
    classify_stability,
    poly_roots,
)
from tests.conftest import OSC_COEFFS


def test_char_poly_oscillator(osc_result):
    coeffs = char_poly(osc_result.closed_loop)
    expected = np.concatenate(([1.0], OSC_COEFFS[::-1]))
    np.testing.assert_allclose(coeffs, expected, atol=1e-3)


def test_char_poly_open_loop():
    cl = ClosedLoop(F_cl=np.zeros((6, 6)), coeffs=np.array([1.0, 3, 0, 0, 0, 0]))
    np.testing.assert_array_equal(char_poly(cl), [1, 0, 0, 0, 0, 3, 1])


def test_char_poly_zero_coeffs():
    cl = ClosedLoop(F_cl=np.zeros((6, 6)), coeffs=np.zeros(6))
    np.testing.assert_array_equal(char_poly(cl), [1, 0, 0, 0, 0, 0, 0])


def test_roots_of_quadratic():
    modes = poly_roots(np.array([1.0, 0.0, -4.0]), q=1)
    np.testing.assert_allclose(modes.roots, [-2.0, 2.0], atol=1e-12)
    np.testing.assert_array_equal(modes.re_negative, [True, False])
    np.testing.assert_array_equal(modes.decay, [True, False])


def test_cube_roots_of_minus_two():
    modes = poly_roots(np.array([1.0, 0.0, 0.0, 2.0]), q=3)
    r = 2.0 ** (1.0 / 3.0)
    expected = np.array([-r, r * np.exp(-1j * np.pi / 3), r * np.exp(1j * np.pi / 3)])
    expected = expected[np.lexsort((expected.imag, expected.real))]
    np.testing.assert_allclose(modes.roots, expected, atol=1e-10)
    # conjugate pairing is exact after canonicalization
    assert modes.roots[1] == modes.roots[2].conjugate()


def test_two_criteria_differ_for_complex_cube_roots():
    # lambda^3 = -2: the complex pair has Re(lambda) > 0 but Re(lambda^3) < 0
    modes = poly_roots(np.array([1.0, 0.0, 0.0, 2.0]), q=3)
    report = classify_stability(modes)
    assert not report.paper_criterion
    assert report.mode_decay
    complex_mask = np.abs(modes.roots.imag) > 1e-9
    assert np.all(~modes.re_negative[complex_mask])
    assert np.all(modes.decay)


def test_oscillator_roots_all_stable_by_re_criterion(osc_result):
    report = classify_stability(osc_result.modes)
    assert report.paper_criterion
    assert np.all(osc_result.modes.roots.real < -1e-9)
    # the mode exponents lambda^3 are NOT all decaying: the two criteria
    # genuinely differ on this instance and are reported separately
    assert not report.mode_decay


def test_residual_bound_holds(osc_result):
    coeffs = char_poly(osc_result.closed_loop)
    modes = osc_result.modes
    residuals = np.abs(np.polyval(coeffs, modes.roots))
    assert np.all(residuals <= 1e-6 * (1 + np.abs(modes.roots) ** 6))


def test_marginal_root_flagged():
    modes = poly_roots(np.array([1.0, -1e-12]), q=1)
    report = classify_stability(modes)
    assert report.marginal[0]
    assert not report.paper_criterion


def test_degenerate_roots_rejected():
    with pytest.raises(DegenerateRoots):
        poly_roots(np.array([1.0, -2.0, 1.0]), q=1)  # (x-1)^2


def test_non_monic_rejected():
    with pytest.raises(ValueError):
        poly_roots(np.array([2.0, 0.0, -4.0]), q=1)


def test_roots_match_closed_loop_eigenvalues(osc_result):
    eigs = np.linalg.eigvals(osc_result.closed_loop.F_cl)
    eigs = eigs[np.lexsort((eigs.imag, eigs.real))]
    assert np.max(np.abs(eigs - osc_result.modes.roots)) <= 1e-6


def test_coefficient_reconstruction(osc_result):
    coeffs = char_poly(osc_result.closed_loop)
    rebuilt = np.poly(osc_result.modes.roots).real
    scale = np.max(np.abs(coeffs))
    assert np.max(np.abs(rebuilt - coeffs)) <= 1e-6 * scale


def test_random_polynomials_reconstruct():
    rng = np.random.default_rng(3)
    for _ in range(20):
        roots = rng.uniform(-3, -0.2, size=4) + 1j * rng.uniform(0.3, 2, size=4)
        roots = np.concatenate([roots, roots.conj()])
        coeffs = np.poly(roots).real
        modes = poly_roots(coeffs, q=3)
        rebuilt = np.poly(modes.roots).real
        assert np.max(np.abs(rebuilt - coeffs)) <= 1e-6 * np.max(np.abs(coeffs))
