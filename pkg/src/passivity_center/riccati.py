"""Extremal solutions of the passivity Riccati equations.

The continuous equation is solved through ordered real/complex Schur
decompositions of the Hamiltonian matrix, the discrete one through an ordered
QZ decomposition of the two factors of the symplectic matrix (so the first
factor is never inverted).
"""
import warnings
from dataclasses import dataclass

import numpy as np
import scipy.linalg as sla

from .errors import BoundarySpectrumError, R0SingularError, SubspaceError
from .hermitian import min_eigenvalue, project_hermitian
from .lmi import R0_COND_LIMIT, eval_W

__all__ = [
    "ExtremalPair",
    "riccati_residual",
    "hamiltonian_matrix",
    "symplectic_pencil",
    "solve_care_extremal",
    "solve_dare_extremal",
    "solve_extremal",
    "closed_loop_matrix",
    "verify_invariant_subspace",
]

SPECTRUM_TOL = 1e-8
SUBSPACE_COND_LIMIT = 1e12
REFINE_STEPS = 4


@dataclass(frozen=True)
class ExtremalPair:
    x_min: np.ndarray
    x_max: np.ndarray
    closed_loop_spectra: tuple

    @property
    def gap(self):
        """``lambda_min(x_max - x_min)``; non-negative up to rounding."""
        return min_eigenvalue(self.x_max - self.x_min)


def _weight_parts(M, weight):
    if weight is None:
        return np.zeros((M.n, M.n)), M.C, M.R
    return weight.Q, weight.Cw, weight.R


def riccati_residual(M, X, weight=None):
    """Riccati operator at X; equals the ``P`` block of :func:`eval_W`.

    Continuous: ``-XA - A^H X - (C^H - XB) R^{-1} (C - B^H X)``.
    Discrete: ``X - A^H X A - (C^H - A^H X B)(R - B^H X B)^{-1}(C - B^H X A)``.
    A weight adds its ``Q`` block and replaces ``C``, ``R``.
    """
    return eval_W(M, X, weight).P


def closed_loop_matrix(M, X, weight=None):
    return eval_W(M, X, weight).A_F


def hamiltonian_matrix(M, weight=None):
    Q, Cw, R = _weight_parts(M, weight)
    A, B = M.A, M.B
    Rinv_C = np.linalg.solve(R, Cw)
    A0 = A - B @ Rinv_C
    return np.block([
        [A0, -B @ np.linalg.solve(R, B.conj().T)],
        [Cw.conj().T @ Rinv_C - Q, -A0.conj().T],
    ])


def symplectic_pencil(M, weight=None):
    """Pair ``(E, F)`` with the symplectic matrix equal to ``E^{-1} F``."""
    Q, Cw, R = _weight_parts(M, weight)
    A, B = M.A, M.B
    n = M.n
    I = np.eye(n)
    Rinv_Bh = np.linalg.solve(R, B.conj().T)
    Rinv_C = np.linalg.solve(R, Cw)
    E = np.block([[I, B @ Rinv_Bh], [np.zeros((n, n)), A.conj().T - Cw.conj().T @ Rinv_Bh]])
    F = np.block([[A - B @ Rinv_C, np.zeros((n, n))], [Cw.conj().T @ Rinv_C - Q, I]])
    return E, F


def _x_from_basis(U, n):
    U1, U2 = U[:n, :n], U[n:, :n]
    cond = np.linalg.cond(U1)
    if not np.isfinite(cond) or cond > SUBSPACE_COND_LIMIT:
        raise SubspaceError(f"invariant subspace basis is ill-conditioned (cond={cond:.3e})")
    return project_hermitian(-np.linalg.solve(U1.T, U2.T).T)


def _refine(M, X, weight, max_steps=REFINE_STEPS):
    # Newton steps on the Riccati operator: its derivative at X is
    # -(A_F^H D + D A_F) (continuous) or D - A_F^H D A_F (discrete)
    best, best_res = X, np.linalg.norm(riccati_residual(M, X, weight))
    for _ in range(max_steps):
        ev = eval_W(M, best, weight)
        Ah = ev.A_F.conj().T
        # an inaccurate correction is caught by the residual test below
        with warnings.catch_warnings():
            warnings.simplefilter("ignore", sla.LinAlgWarning)
            if M.is_discrete:
                D = sla.solve_discrete_lyapunov(Ah, -ev.P)
            else:
                D = sla.solve_continuous_lyapunov(Ah, ev.P)
        cand = project_hermitian(best + D)
        try:
            res = np.linalg.norm(riccati_residual(M, cand, weight))
        except R0SingularError:
            break
        if not np.isfinite(res) or res >= best_res:
            break
        best, best_res = cand, res
    return best


def _label(M, X1, X2, weight):
    if min_eigenvalue(X2 - X1) < min_eigenvalue(X1 - X2):
        X1, X2 = X2, X1
    spectra = tuple(np.linalg.eigvals(closed_loop_matrix(M, X, weight)) for X in (X1, X2))
    return ExtremalPair(X1, X2, spectra)


def solve_care_extremal(M, weight=None, tol=SPECTRUM_TOL):
    """Minimal and maximal solutions of the continuous Riccati equation.

    Raises
    ------
    BoundarySpectrumError
        If a Hamiltonian eigenvalue lies within ``tol * ||H||`` of the
        imaginary axis (model not strictly passive).
    SubspaceError
        If the first block of an invariant-subspace basis is ill-conditioned.
    """
    n = M.n
    H = hamiltonian_matrix(M, weight)
    eigs = np.linalg.eigvals(H)
    scale = max(np.linalg.norm(H, 2), 1.0)
    if np.min(np.abs(eigs.real)) <= tol * scale:
        raise BoundarySpectrumError(
            f"Hamiltonian has eigenvalues on the imaginary axis (min |Re| = {np.min(np.abs(eigs.real)):.3e})"
        )
    output = "complex" if np.iscomplexobj(H) else "real"
    bases = []
    for sort in ("lhp", "rhp"):
        _, Z, sdim = sla.schur(H, output=output, sort=sort)
        if sdim != n:
            raise BoundarySpectrumError(f"Hamiltonian spectrum is not split {n}/{n} (got {sdim})")
        bases.append(_refine(M, _x_from_basis(Z, n), weight))
    return _label(M, bases[0], bases[1], weight)


def solve_dare_extremal(M, weight=None, tol=SPECTRUM_TOL):
    """Minimal and maximal solutions of the discrete Riccati equation.

    Deflating subspaces of the pencil ``lambda E - F`` (inside and outside the
    unit circle) are computed with an ordered QZ decomposition.
    """
    n = M.n
    E, F = symplectic_pencil(M, weight)
    alpha, beta = sla.eigvals(F, E, homogeneous_eigvals=True)
    finite = np.abs(beta) > 0
    mod = np.full(alpha.shape, np.inf)
    mod[finite] = np.abs(alpha[finite] / beta[finite])
    if np.min(np.abs(mod - 1.0)) <= tol * max(np.linalg.norm(F, 2), np.linalg.norm(E, 2), 1.0):
        raise BoundarySpectrumError(
            f"symplectic pencil has eigenvalues on the unit circle (min ||z|-1| = {np.min(np.abs(mod - 1)):.3e})"
        )
    output = "complex" if np.iscomplexobj(F) or np.iscomplexobj(E) else "real"
    bases = []
    for inside in (True, False):
        if inside:
            sort = lambda a, b: np.abs(a) < np.abs(b)  # noqa: E731
        else:
            sort = lambda a, b: np.abs(a) > np.abs(b)  # noqa: E731
        result = sla.ordqz(F, E, sort=sort, output=output)
        alpha_s, beta_s, Z = result[2], result[3], result[5]
        sdim = int(np.sum(sort(alpha_s, beta_s)))
        if sdim != n:
            raise BoundarySpectrumError(f"symplectic spectrum is not split {n}/{n} (got {sdim})")
        bases.append(_refine(M, _x_from_basis(Z, n), weight))
    pair = _label(M, bases[0], bases[1], weight)
    for X in (pair.x_min, pair.x_max):
        R0 = eval_W(M, X, weight).R0
        if np.linalg.cond(R0) > R0_COND_LIMIT:
            raise R0SingularError("R - B^H X B is singular at an extremal solution")
    return pair


def solve_extremal(M, weight=None):
    if M.is_discrete:
        return solve_dare_extremal(M, weight)
    return solve_care_extremal(M, weight)


def verify_invariant_subspace(M, X, weight=None):
    """Residuals of the invariant-subspace relations satisfied by Riccati solutions.

    Returns a dict with
    ``"invariant"``: ``||H U - U A_F||`` (continuous) or ``||F U - E U A_F||``
    (discrete, pencil form) with ``U = [I; -X]``;
    ``"extended"``: residual of the extended system-pencil relation with
    ``U_hat = [-X; I; -F]``;
    ``"scale"``: a normalization (``1 + ||X||_F``).
    """
    Q, Cw, R = _weight_parts(M, weight)
    ev = eval_W(M, X, weight)
    n, m = M.n, M.m
    A, B = M.A, M.B
    X = project_hermitian(X)
    A_F, Fb = ev.A_F, ev.F
    I = np.eye(n)
    U = np.vstack([I, -X])
    if M.is_discrete:
        E, Fp = symplectic_pencil(M, weight)
        inv_res = np.linalg.norm(Fp @ U - E @ U @ A_F)
    else:
        H = hamiltonian_matrix(M, weight)
        inv_res = np.linalg.norm(H @ U - U @ A_F)
    Zn, Znm, Zm = np.zeros((n, n)), np.zeros((n, m)), np.zeros((m, m))
    U_hat = np.vstack([-X, I, -Fb])
    if M.is_discrete:
        N0 = np.block([[Zn, A, B], [-I, Q, Cw.conj().T], [Znm.T, Cw, R]])
        N1 = np.block([[Zn, I, Znm], [-A.conj().T, Zn, Znm], [-B.conj().T, Znm.T, Zm]])
    else:
        N0 = np.block([[Zn, A, B], [A.conj().T, Q, Cw.conj().T], [B.conj().T, Cw, R]])
        N1 = np.block([[Zn, I, Znm], [-I, Zn, Znm], [Znm.T, Znm.T, Zm]])
    ext_res = np.linalg.norm(N0 @ U_hat - N1 @ U_hat @ A_F)
    return {
        "invariant": float(inv_res),
        "extended": float(ext_res),
        "scale": float(1.0 + np.linalg.norm(X)),
    }
