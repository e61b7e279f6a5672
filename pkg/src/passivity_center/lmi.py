"""Passivity LMIs ``W_c(X)``, ``W_d(X)``, their Schur factorization and the barrier."""
from dataclasses import dataclass

import numpy as np

from .errors import BoundaryError, R0SingularError, ShapeError
from .hermitian import min_eigenvalue, project_hermitian

__all__ = [
    "LmiEvaluation",
    "lmi_matrix",
    "lmi_increment",
    "eval_W",
    "barrier",
    "log_det_W",
    "gradient_log_det",
    "stationarity_residual",
    "center_equation_residuals",
    "closed_loop_residual",
]

R0_COND_LIMIT = 1e14


def _blocks(M, X, weight):
    X = np.asarray(X)
    if X.shape != (M.n, M.n):
        raise ShapeError(f"X has shape {X.shape}, expected ({M.n}, {M.n})")
    X = project_hermitian(X)
    if weight is None:
        Q, Cw, R = 0.0, M.C, M.R
    else:
        Q, Cw, R = weight.Q, weight.Cw, weight.R
    A, B = M.A, M.B
    Ah, Bh = A.conj().T, B.conj().T
    if M.is_discrete:
        W11 = Q + X - Ah @ X @ A
        W21 = Cw - Bh @ X @ A
        W22 = R - Bh @ X @ B
    else:
        W11 = Q - X @ A - Ah @ X
        W21 = Cw - Bh @ X
        W22 = R
    return project_hermitian(W11), W21, project_hermitian(W22)


def lmi_matrix(M, X, weight=None):
    """The (n+m)-square Hermitian matrix ``W(X)`` without factorizing it."""
    W11, W21, W22 = _blocks(M, X, weight)
    return project_hermitian(np.block([[W11, W21.conj().T], [W21, W22]]))


def lmi_increment(M, Delta):
    """Directional change ``W(X + Delta) - W(X)`` (independent of X and weight)."""
    A, B = M.A, M.B
    Ah, Bh = A.conj().T, B.conj().T
    Delta = project_hermitian(Delta)
    if M.is_discrete:
        blocks = [[Delta - Ah @ Delta @ A, -Ah @ Delta @ B], [-Bh @ Delta @ A, -Bh @ Delta @ B]]
    else:
        blocks = [[-(Ah @ Delta + Delta @ A), -Delta @ B], [-Bh @ Delta, np.zeros((M.m, M.m))]]
    return project_hermitian(np.block(blocks))


@dataclass(frozen=True)
class LmiEvaluation:
    """``W(X)`` together with ``W = [I F^H; 0 I] diag(P, R0) [I 0; F I]``."""

    W: np.ndarray
    R0: np.ndarray
    F: np.ndarray
    P: np.ndarray
    A_F: np.ndarray
    min_eig_P: float
    min_eig_R0: float

    @property
    def feasible_strict(self):
        return self.min_eig_P > 0 and self.min_eig_R0 > 0

    @property
    def min_eig_W(self):
        return min_eigenvalue(self.W)

    def log_det(self):
        """``ln det W = ln det P + ln det R0`` (requires strict feasibility)."""
        return _logdet_pd(self.P) + _logdet_pd(self.R0)


def _logdet_pd(H):
    L = np.linalg.cholesky(H)
    return float(2.0 * np.sum(np.log(np.real(np.diag(L)))))


def eval_W(M, X, weight=None):
    """Evaluate the LMI at X and its block factorization.

    Continuous: ``W = [Q - XA - A^H X, Cw^H - XB; Cw - B^H X, R]``.
    Discrete: ``W = [Q + X - A^H X A, Cw^H - A^H X B; Cw - B^H X A, R - B^H X B]``.
    ``F = R0^{-1} W21`` and ``P = W11 - F^H R0 F``.
    """
    W11, W21, R0 = _blocks(M, X, weight)
    W = project_hermitian(np.block([[W11, W21.conj().T], [W21, R0]]))
    if np.linalg.cond(R0) > R0_COND_LIMIT:
        raise R0SingularError("R0 block of W(X) is singular; F and P are undefined")
    F = np.linalg.solve(R0, W21)
    P = project_hermitian(W11 - W21.conj().T @ F)
    A_F = M.A - M.B @ F
    return LmiEvaluation(
        W=W,
        R0=R0,
        F=F,
        P=P,
        A_F=A_F,
        min_eig_P=min_eigenvalue(P),
        min_eig_R0=min_eigenvalue(R0),
    )


def _feasible(M, X, weight):
    ev = eval_W(M, X, weight)
    if not ev.feasible_strict:
        lam = ev.min_eig_W
        raise BoundaryError(f"X is not strictly feasible (lambda_min(W) = {lam:.3e})", lam)
    return ev


def log_det_W(M, X, weight=None):
    return _feasible(M, X, weight).log_det()


def barrier(M, X, weight=None):
    """``-ln det W(X)``, with the determinant taken as ``det P * det R0``."""
    return -log_det_W(M, X, weight)


def _gradient_from(M, ev):
    P_inv = np.linalg.inv(ev.P)
    A_F = ev.A_F
    if M.is_discrete:
        B = M.B
        G = A_F @ P_inv @ A_F.conj().T - P_inv + B @ np.linalg.solve(ev.R0, B.conj().T)
    else:
        G = A_F @ P_inv + P_inv @ A_F.conj().T
    return project_hermitian(-G)


def gradient_log_det(M, X, weight=None):
    """Gradient of ``ln det W(X)`` on the Hermitian matrices.

    Continuous: ``-(A_F P^{-1} + P^{-1} A_F^H)``.
    Discrete: ``-(A_F P^{-1} A_F^H - P^{-1} + B R0^{-1} B^H)``.
    The gradient of the barrier is the negative of this.
    """
    return _gradient_from(M, _feasible(M, X, weight))


def stationarity_residual(M, X, weight=None):
    return float(np.linalg.norm(gradient_log_det(M, X, weight)))


def _rel(res, *terms):
    scale = sum(terms)
    return float(res / scale) if scale > 0 else float(res)


def center_equation_residuals(M, X, weight=None, relative=True):
    """Residuals of the three equations characterizing the center.

    Keys ``"F"``, ``"X"``, ``"P"``: the feedback equation ``R0 F = W21``,
    the residual definition ``P = W11 - F^H R0 F``, and the closed-loop
    condition (``P A_F + A_F^H P = 0`` continuous,
    ``A_F P^{-1} A_F^H - P^{-1} + B R0^{-1} B^H = 0`` discrete).

    With ``relative=True`` each Frobenius residual is divided by the sum of
    the norms of the terms in its equation; at the center ``P`` can be very
    large, so absolute residuals are not scale free.
    """
    ev = _feasible(M, X, weight)
    W11, W21, R0 = _blocks(M, X, weight)
    F, P = ev.F, ev.P
    nrm = np.linalg.norm
    FRF = F.conj().T @ R0 @ F
    res_F = nrm(R0 @ F - W21)
    res_X = nrm(P - (W11 - FRF))
    res_P, terms_P = _closed_loop_terms(M, ev)
    if not relative:
        return {"F": float(res_F), "X": float(res_X), "P": float(res_P)}
    return {
        "F": _rel(res_F, nrm(R0 @ F), nrm(W21)),
        "X": _rel(res_X, nrm(P), nrm(W11), nrm(FRF)),
        "P": _rel(res_P, *terms_P),
    }


def _closed_loop_terms(M, ev):
    nrm = np.linalg.norm
    P, A_F = ev.P, ev.A_F
    if M.is_discrete:
        P_inv = np.linalg.inv(P)
        BRB = M.B @ np.linalg.solve(ev.R0, M.B.conj().T)
        APA = A_F @ P_inv @ A_F.conj().T
        return nrm(APA - P_inv + BRB), (nrm(APA), nrm(P_inv), nrm(BRB))
    PA = P @ A_F
    return nrm(PA + PA.conj().T), (2 * nrm(PA),)


def closed_loop_residual(M, ev, relative=True):
    """Residual of the closed-loop center equation for an evaluation ``ev``."""
    res, terms = _closed_loop_terms(M, ev)
    return _rel(res, *terms) if relative else float(res)
