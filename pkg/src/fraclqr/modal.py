"""Closed-loop characteristic roots and stability classification.

Substituting the eigen-relation ``D^{m/q} y = lambda^m y`` into the scalar
closed-loop equation yields a monic degree-``n`` polynomial in the
``D^{1/q}`` eigenvariable.  Its roots drive both the stability report and
the fractional-exponential solution representation.

Two stability criteria are reported side by side and never merged:

* ``re_negative`` -- Re(lambda) < 0, the classical-looking test;
* ``decay``       -- Re(lambda^q) < 0, the sign of the exponent that
  actually appears in each mode's exponential factor.

For odd q and real roots the two agree; for complex roots they can
genuinely differ, so the report carries both.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .exceptions import DegenerateRoots, NumericalError
from .synth import ClosedLoop

__all__ = ["ModeSet", "StabilityReport", "char_poly", "poly_roots", "classify_stability"]

#: roots closer than this are degenerate (Vandermonde solve would be singular)
ROOT_GAP_TOL = 1e-7

#: |Re| band in which a root is classified as marginal
MARGIN_TOL = 1e-9


@dataclass(frozen=True)
class ModeSet:
    """Roots of the closed-loop polynomial with per-root stability flags."""

    roots: np.ndarray
    q: int
    re_negative: np.ndarray
    decay: np.ndarray

    @property
    def n(self) -> int:
        return self.roots.size


@dataclass(frozen=True)
class StabilityReport:
    paper_criterion: bool      # all Re(lambda) < -MARGIN_TOL
    mode_decay: bool           # all Re(lambda^q) < -MARGIN_TOL
    marginal: np.ndarray       # per-root: |Re lambda| <= MARGIN_TOL


def char_poly(cl: ClosedLoop) -> np.ndarray:
    """Monic coefficients [1, c_{n-1}, ..., c_1, c_0] of the eigenvariable polynomial."""
    return np.concatenate(([1.0], cl.coeffs[::-1]))


def _pair_conjugates(roots: np.ndarray) -> np.ndarray:
    """Canonicalize complex roots into exact conjugate pairs."""
    out = roots.astype(complex).copy()
    scale = 1.0 + np.max(np.abs(out)) if out.size else 1.0
    used = np.zeros(out.size, dtype=bool)
    for i in range(out.size):
        if used[i] or abs(out[i].imag) <= 1e-8 * scale:
            out[i] = complex(out[i].real, 0.0) if abs(out[i].imag) <= 1e-8 * scale else out[i]
            continue
        partner = None
        best = np.inf
        for j in range(i + 1, out.size):
            if used[j]:
                continue
            d = abs(out[j] - out[i].conjugate())
            if d < best:
                best, partner = d, j
        if partner is None or best > 1e-8 * scale:
            raise NumericalError(
                f"complex root {out[i]} lacks a conjugate partner (gap {best:.3e})"
            )
        mean = (out[i] + out[partner].conjugate()) / 2.0
        out[i], out[partner] = mean, mean.conjugate()
        used[i] = used[partner] = True
    return out


def poly_roots(coeffs: np.ndarray, q: int) -> ModeSet:
    """Roots of a monic polynomial via companion-matrix eigenvalues.

    Roots are sorted by (real, imaginary) part, conjugate pairs are
    canonicalized exactly, and each root must satisfy the residual bound
    |P(lambda)| <= 1e-6 (1 + |lambda|^deg).  Raises ``DegenerateRoots``
    when two roots are closer than ``ROOT_GAP_TOL``.
    """
    coeffs = np.asarray(coeffs, dtype=float)
    if coeffs.ndim != 1 or coeffs.size < 2:
        raise ValueError("need a coefficient vector of degree >= 1")
    if coeffs[0] != 1.0:
        raise ValueError("polynomial must be monic")
    deg = coeffs.size - 1
    roots = np.roots(coeffs)
    residuals = np.abs(np.polyval(coeffs, roots))
    bounds = 1e-6 * (1.0 + np.abs(roots) ** deg)
    if np.any(residuals > bounds):
        worst = np.max(residuals / bounds)
        raise NumericalError(f"root residual exceeds bound by factor {worst:.3e}")
    roots = _pair_conjugates(roots)
    roots = roots[np.lexsort((roots.imag, roots.real))]
    diffs = np.abs(roots[:, None] - roots[None, :])
    np.fill_diagonal(diffs, np.inf)
    gap = diffs.min()
    if gap < ROOT_GAP_TOL:
        raise DegenerateRoots(f"two roots within {gap:.3e} of each other")
    powered = roots**q
    return ModeSet(
        roots=roots,
        q=q,
        re_negative=roots.real < -MARGIN_TOL,
        decay=powered.real < -MARGIN_TOL,
    )


def classify_stability(modes: ModeSet) -> StabilityReport:
    """Aggregate the per-root flags; near-axis roots are marked marginal."""
    marginal = np.abs(modes.roots.real) <= MARGIN_TOL
    return StabilityReport(
        paper_criterion=bool(np.all(modes.re_negative)),
        mode_decay=bool(np.all(modes.decay)),
        marginal=marginal,
    )
