"""Algebraic Riccati solvers via the Hamiltonian matrix.

Two independent routes compute the stabilizing solution S of

    S F + F' S - S G (1/R) G' S + Q = 0:

``solve_are_spectral`` extracts the stable invariant subspace of the
Hamiltonian

    H = [[F, -(1/R) G G'], [-Q, -F']]

with an ordered real Schur decomposition and forms ``S = T3 T1^{-1}``;
``solve_are_sign`` runs the Newton sign iteration ``Z <- (Z + Z^{-1})/2``
on H and reads S off the stable projector.  The two are cross-checked in
the test suite; agreement is part of the acceptance contract.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np
from scipy.linalg import schur

from .exceptions import ImaginaryAxisEigenvalue, NoConvergence, SingularT1
from .lift import LiftedSystem

__all__ = [
    "HamiltonianDecomposition",
    "RiccatiSolution",
    "build_hamiltonian",
    "solve_are_spectral",
    "solve_are_sign",
    "are_residual",
]

#: eigenvalues with |Re| below this band are treated as on the imaginary axis
SPECTRAL_GAP_TOL = 1e-9

_SIGN_MAX_ITER = 100
_SIGN_REL_TOL = 1e-12


@dataclass(frozen=True)
class HamiltonianDecomposition:
    H: np.ndarray
    stable_eigenvalues: np.ndarray
    T1: np.ndarray
    T3: np.ndarray


@dataclass(frozen=True)
class RiccatiSolution:
    S: np.ndarray
    residual: float
    solver: str


def build_hamiltonian(sys_: LiftedSystem) -> np.ndarray:
    """Assemble the 2n x 2n Hamiltonian [[F, -(1/R)GG'], [-Q, -F']]."""
    F, G, Q, R = sys_.F, np.atleast_1d(sys_.G), sys_.Q, sys_.R
    GG = np.outer(G, G) / R
    return np.block([[F, -GG], [-Q, -F.T]])


def _sorted_complex(values: np.ndarray) -> np.ndarray:
    return values[np.lexsort((values.imag, values.real))]


def _check_hyperbolic(H: np.ndarray, gap_tol: float) -> np.ndarray:
    """Return H's eigenvalues, rejecting any within the imaginary-axis band."""
    eigs = np.linalg.eigvals(H)
    closest = np.min(np.abs(eigs.real))
    if closest < gap_tol:
        raise ImaginaryAxisEigenvalue(
            f"Hamiltonian eigenvalue with |Re| = {closest:.3e} < {gap_tol:g}; "
            "no stabilizing solution exists"
        )
    return eigs


def are_residual(S: np.ndarray, sys_: LiftedSystem) -> float:
    """Frobenius norm of S F + F' S - S G (1/R) G' S + Q."""
    S = np.atleast_2d(np.asarray(S, dtype=float))
    n = sys_.n
    if S.shape != (n, n):
        raise ValueError(f"S must be {n}x{n}, got {S.shape}")
    F, G, Q, R = sys_.F, np.atleast_1d(sys_.G), sys_.Q, sys_.R
    SG = S @ G
    res = S @ F + F.T @ S - np.outer(SG, SG) / R + Q
    return float(np.linalg.norm(res))


def _finalize(S: np.ndarray, sys_: LiftedSystem, solver: str) -> RiccatiSolution:
    S = (S + S.T) / 2.0  # T3 T1^{-1} is symmetric only up to rounding
    norm_s = np.linalg.norm(S)
    min_eig = np.min(np.linalg.eigvalsh(S)) if S.size else 0.0
    if min_eig < -1e-8 * max(1.0, norm_s):
        raise NoConvergence(
            f"{solver} solver produced an indefinite S (min eig {min_eig:.3e})"
        )
    residual = are_residual(S, sys_)
    if residual > 1e-6 * max(1.0, norm_s**2):
        raise NoConvergence(
            f"{solver} solver residual {residual:.3e} exceeds tolerance"
        )
    return RiccatiSolution(S=S, residual=residual, solver=solver)


def solve_are_spectral(
    sys_: LiftedSystem, gap_tol: float = SPECTRAL_GAP_TOL
) -> tuple[RiccatiSolution, HamiltonianDecomposition]:
    """Stabilizing Riccati solution from the stable Schur subspace of H.

    The ordered real Schur form collects the n stable eigenvalues in the
    leading block, so the leading n Schur vectors are a real orthonormal
    basis [T1; T3] of the stable invariant subspace (complex conjugate
    eigenvector pairs are already combined).  Raises
    ``ImaginaryAxisEigenvalue`` when the spectral gap closes and
    ``SingularT1`` when the subspace has no graph representation.
    """
    H = build_hamiltonian(sys_)
    n = sys_.n
    eigs = _check_hyperbolic(H, gap_tol)
    stable = _sorted_complex(eigs[eigs.real < 0])
    if stable.size != n:
        raise ImaginaryAxisEigenvalue(
            f"expected {n} stable Hamiltonian eigenvalues, found {stable.size}"
        )
    _, Z, sdim = schur(H, output="real", sort=lambda re, im: re < 0)
    if sdim != n:
        raise ImaginaryAxisEigenvalue(
            f"Schur reordering selected {sdim} stable eigenvalues, expected {n}"
        )
    T1 = Z[:n, :n]
    T3 = Z[n:, :n]
    if np.linalg.cond(T1) > 1e12:
        raise SingularT1("stable-subspace basis has a singular upper block")
    S = np.linalg.solve(T1.T, T3.T).T
    solution = _finalize(S, sys_, "spectral")
    # closed-loop spectrum must mirror the stable half of H's spectrum
    F_cl = sys_.F - np.outer(sys_.G, sys_.G @ solution.S) / sys_.R
    cl_eigs = _sorted_complex(np.linalg.eigvals(F_cl))
    if np.max(np.abs(cl_eigs - stable)) > 1e-6 * max(1.0, np.max(np.abs(stable))):
        raise NoConvergence("closed-loop spectrum does not match the stable half of H")
    decomp = HamiltonianDecomposition(H=H, stable_eigenvalues=stable, T1=T1, T3=T3)
    return solution, decomp


def solve_are_sign(
    sys_: LiftedSystem, gap_tol: float = SPECTRAL_GAP_TOL
) -> RiccatiSolution:
    """Stabilizing Riccati solution via the matrix sign function of H.

    Newton iteration with determinant scaling: ``Z <- (cZ + (cZ)^{-1})/2``,
    ``c = |det Z|^{-1/(2n)}``.  At convergence ``W = sign(H)`` and S solves
    the stacked system ``[W12; W22 + I] S = [-(W11 + I); -W21]``.
    """
    H = build_hamiltonian(sys_)
    _check_hyperbolic(H, gap_tol)
    n = sys_.n
    m = 2 * n
    Z = H.copy()
    for _ in range(_SIGN_MAX_ITER):
        sign, logdet = np.linalg.slogdet(Z)
        if sign == 0:
            raise ImaginaryAxisEigenvalue("sign iteration hit a singular iterate")
        c = np.exp(-logdet / m)
        Zc = c * Z
        try:
            Z_next = 0.5 * (Zc + np.linalg.inv(Zc))
        except np.linalg.LinAlgError as exc:
            raise ImaginaryAxisEigenvalue("sign iteration stalled") from exc
        delta = np.linalg.norm(Z_next - Z)
        Z = Z_next
        if delta <= _SIGN_REL_TOL * np.linalg.norm(Z):
            break
    else:
        raise NoConvergence(
            f"sign iteration did not converge in {_SIGN_MAX_ITER} iterations"
        )
    W11, W12 = Z[:n, :n], Z[:n, n:]
    W21, W22 = Z[n:, :n], Z[n:, n:]
    eye = np.eye(n)
    A = np.vstack([W12, W22 + eye])
    B = -np.vstack([W11 + eye, W21])
    S, *_ = np.linalg.lstsq(A, B, rcond=None)
    return _finalize(S, sys_, "sign")
