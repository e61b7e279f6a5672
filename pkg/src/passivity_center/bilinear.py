"""Cayley (bilinear) transforms between continuous- and discrete-time models.

The transform ``A_d = (A_c - I)^{-1}(I + A_c)``, ``B_d = sqrt(2)(A_c - I)^{-1} B_c``
together with the congruence ``W_d = T_c^H W_c T_c``,
``T_c = [[sqrt(2)(I - A_c)^{-1}, (I - A_c)^{-1} B_c], [0, I]]``, maps the
continuous LMI at X onto the discrete LMI at the same X. The map is an
involution: applying the same formulas to the discrete data returns the
continuous data, and the discrete-side factor is ``T_c^{-1}``.
"""
from dataclasses import dataclass

import numpy as np

from .errors import TransformPoleError
from .hermitian import project_hermitian
from .lmi import eval_W, log_det_W
from .model import CONTINUOUS, DISCRETE, GeneralizedWeight

__all__ = [
    "TransformedModel",
    "cayley_c2d",
    "cayley_d2c",
    "verify_barrier_equivalence",
    "verify_residual_relation",
]

POLE_COND_LIMIT = 1e12


@dataclass(frozen=True)
class TransformedModel:
    """Transformed model, its generalized weight and the congruence factor.

    ``det_ratio = |det t_factor|^2`` is the constant ratio between the
    transformed and the original ``det W(X)``.
    """

    model: object
    weight: GeneralizedWeight
    t_factor: np.ndarray
    det_ratio: float


def _skew(D):
    return 0.5 * (D - D.conj().T)


def _weight_of(M, weight):
    return weight if weight is not None else M.default_weight()


def _transform(M, weight, target):
    n, m = M.n, M.m
    I = np.eye(n)
    K = I - M.A
    cond = np.linalg.cond(K)
    if not np.isfinite(cond) or cond > POLE_COND_LIMIT:
        raise TransformPoleError(f"1 is (numerically) an eigenvalue of A (cond(I - A) = {cond:.3e})")
    K_inv_B = np.linalg.solve(K, M.B)
    A_new = -np.linalg.solve(K, I + M.A)
    B_new = -np.sqrt(2.0) * K_inv_B
    T = np.zeros((n + m, n + m), dtype=np.result_type(K, K_inv_B))
    T[:n, :n] = np.sqrt(2.0) * np.linalg.inv(K)
    T[:n, n:] = K_inv_B
    T[n:, n:] = np.eye(m)
    w = _weight_of(M, weight)
    W_new = T.conj().T @ w.block @ T
    new_weight = GeneralizedWeight.from_block(W_new, n)
    D_new = 0.5 * new_weight.R + _skew(M.D)
    model = M.replace(A=A_new, B=B_new, C=new_weight.Cw, D=D_new, time_domain=target)
    det_ratio = float(2.0**n / np.abs(np.linalg.det(K)) ** 2)
    return TransformedModel(model, new_weight, T, det_ratio)


def cayley_c2d(M_c, weight_c=None):
    """Continuous to discrete transform.

    ``D_d = R_d / 2 + skew(D_c)``, so ``D_d + D_d^H = R_d`` and the skew part
    of D (which no LMI sees) survives a round trip.

    Raises
    ------
    TransformPoleError
        If ``I - A_c`` is singular.
    """
    if M_c.is_discrete:
        raise ValueError("cayley_c2d expects a continuous-time model")
    return _transform(M_c, weight_c, DISCRETE)


def cayley_d2c(M_d, weight_d=None):
    """Discrete to continuous transform, the inverse of :func:`cayley_c2d`.

    ``A_c = (A_d - I)^{-1}(I + A_d)``, ``B_c = sqrt(2)(A_d - I)^{-1} B_d`` and
    ``W_c = T_d^H W_d T_d`` with ``T_d = [[sqrt(2)(I - A_d)^{-1}, (I - A_d)^{-1} B_d], [0, I]]``.

    Raises
    ------
    TransformPoleError
        If ``I - A_d`` is singular.
    """
    if not M_d.is_discrete:
        raise ValueError("cayley_d2c expects a discrete-time model")
    return _transform(M_d, weight_d, CONTINUOUS)


def verify_barrier_equivalence(M_c, weight_c, X_list):
    """Ratio ``det W_d(X) / det W_c(X)`` at each X (all must be feasible).

    Returns a dict with the ratios, ``det_ratio`` and the relative standard
    deviation of the ratios and their largest relative deviation from
    ``det_ratio``.

    Raises
    ------
    BoundaryError
        If some X is not strictly feasible.
    """
    tm = cayley_c2d(M_c, weight_c)
    ratios = []
    for X in X_list:
        log_c = log_det_W(M_c, X, weight_c)
        log_d = log_det_W(tm.model, X, tm.weight)
        ratios.append(np.exp(log_d - log_c))
    ratios = np.asarray(ratios)
    return {
        "ratios": ratios,
        "det_ratio": tm.det_ratio,
        "relative_std": float(np.std(ratios) / np.mean(ratios)),
        "max_relative_deviation": float(np.max(np.abs(ratios / tm.det_ratio - 1.0))),
    }


def verify_residual_relation(M_c, X, weight_c=None):
    """Check how the Riccati residual transforms under the Cayley map at a fixed X.

    With ``K = I - A_c + B_c F_c`` and the transported feedback
    ``F_t = sqrt(2) F_c K^{-1}``, the discrete residual evaluated with
    feedback ``F_t``,
    ``P_d(F_t) = W11 - F_t^H W21 - W21^H F_t + F_t^H R0 F_t``,
    equals ``2 K^{-H} P_c K^{-1}`` (key ``"relative_residual"``).

    ``F_t`` is not the optimal discrete feedback, so the Schur complement
    ``P_d`` of the discrete LMI differs in general; it satisfies
    ``P_d^{-1} = (K P_c^{-1} K^H + B_c R_c^{-1} B_c^H) / 2``
    (key ``"schur_relative_residual"``).
    """
    tm = cayley_c2d(M_c, weight_c)
    ev_c = eval_W(M_c, X, weight_c)
    ev_d = eval_W(tm.model, X, tm.weight)
    n = M_c.n
    K = np.eye(n) - M_c.A + M_c.B @ ev_c.F
    K_inv = np.linalg.inv(K)
    predicted = project_hermitian(2.0 * K_inv.conj().T @ ev_c.P @ K_inv)
    F_t = np.sqrt(2.0) * ev_c.F @ K_inv
    W = ev_d.W
    W11, W21, R0 = W[:n, :n], W[n:, :n], W[n:, n:]
    P_t = project_hermitian(W11 - F_t.conj().T @ W21 - W21.conj().T @ F_t + F_t.conj().T @ R0 @ F_t)
    res = float(np.linalg.norm(P_t - predicted))
    scale = float(np.linalg.norm(predicted))

    R_c = ev_c.R0
    B = M_c.B
    Pd_inv = 0.5 * (K @ np.linalg.solve(ev_c.P, K.conj().T) + B @ np.linalg.solve(R_c, B.conj().T))
    Pd_pred = project_hermitian(np.linalg.inv(project_hermitian(Pd_inv)))
    res_s = float(np.linalg.norm(ev_d.P - Pd_pred))
    scale_s = float(np.linalg.norm(ev_d.P))
    return {
        "residual": res,
        "relative_residual": res / scale if scale > 0 else res,
        "schur_residual": res_s,
        "schur_relative_residual": res_s / scale_s if scale_s > 0 else res_s,
        "transported_feedback": F_t,
        "optimal_feedback": ev_d.F,
        "P_c": ev_c.P,
        "P_d": ev_d.P,
    }
