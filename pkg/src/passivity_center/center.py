"""Analytic center of the passivity LMI.

The center maximizes ``ln det W(X)`` over the strictly feasible Hermitian X.
Newton steps are computed in transformed ("hatted") coordinates
``X = X0 + T Delta_hat T`` with ``T = P(X0)^{1/2}``, where the Hessian of the
log-determinant takes a simple polynomial form in ``A_hat = T A_F T^{-1}``,
``B_hat = T B`` and ``Q_hat = B_hat R0^{-1} B_hat^H``.
"""
import time
from dataclasses import dataclass, field, replace
from typing import Callable, NamedTuple, Optional

import numpy as np

from .errors import (
    BoundaryError,
    BoundarySpectrumError,
    DegenerateDirectionError,
    InvalidScalarModelError,
    NotPDError,
    NotStrictlyPassiveError,
    R0SingularError,
    SingularHessianError,
    SingularOperatorError,
    SubspaceError,
    XiTooLargeError,
)
from .hermitian import (
    HermitianOperator,
    frobenius_real_inner,
    hermitian_sqrt,
    min_eigenvalue,
    project_hermitian,
    solve_hermitian_operator,
)
from .lmi import _gradient_from, closed_loop_residual, eval_W, lmi_matrix
from .model import CONTINUOUS, DISCRETE

__all__ = [
    "CenterOptions",
    "IterationRecord",
    "CenterResult",
    "NewtonSystem",
    "init_geometric_mean",
    "init_shifted_riccati",
    "shifted_model",
    "default_xi",
    "newton_system",
    "newton_direction",
    "line_search_newton_alpha",
    "steepest_ascent_step",
    "compute_analytic_center",
    "verify_center_spectrum",
    "barrier_rounding_error",
    "scalar_center_reference",
]

METHODS = ("newton", "ascent")
INITS = ("geometric_mean", "shifted_riccati", "identity", "given")
ASCENT_METRICS = ("local", "euclidean")
MAX_HALVINGS = 60
REFINE_STEPS = 3
MONOTONE_SLACK = 1e-12


@dataclass(frozen=True)
class CenterOptions:
    """Solver settings for :func:`compute_analytic_center`.

    ``max_iter=None`` means 200 Newton or 5000 ascent iterations. Ascent
    runs record no decrement (NaN in the trace). ``line_search`` is the number
    of Newton corrections in alpha applied to a damped Newton step (0 keeps
    the plain ``1/(1+lambda)`` damping); a correction is kept only if it
    lowers the barrier further. ``ascent_metric`` selects the inner product
    defining the steepest-ascent direction: ``"euclidean"`` uses the plain
    gradient in X, ``"local"`` the gradient in the hatted coordinates of the
    Newton step (``Delta_X = T g_hat T``), which is far less sensitive to the
    scaling of X.
    """

    method: str = "newton"
    tol_residual: float = 1e-8
    tol_decrement: float = 1e-10
    max_iter: Optional[int] = None
    init: str = "geometric_mean"
    damping_threshold: float = 0.25
    xi: Optional[float] = None
    line_search: int = 2
    ascent_metric: str = "local"

    def __post_init__(self):
        if self.method not in METHODS:
            raise ValueError(f"method must be one of {METHODS}, got {self.method!r}")
        if self.init not in INITS:
            raise ValueError(f"init must be one of {INITS}, got {self.init!r}")
        if not (self.tol_residual > 0 and self.tol_decrement > 0):
            raise ValueError("tolerances must be positive")
        if not 0 < self.damping_threshold < 1:
            raise ValueError("damping_threshold must lie in (0, 1)")
        if self.max_iter is not None and self.max_iter < 0:
            raise ValueError("max_iter must be non-negative")
        if self.xi is not None and not self.xi > 0:
            raise ValueError("xi must be positive")
        if self.ascent_metric not in ASCENT_METRICS:
            raise ValueError(f"ascent_metric must be one of {ASCENT_METRICS}, got {self.ascent_metric!r}")
        if self.line_search < 0:
            raise ValueError("line_search must be non-negative")

    @property
    def iteration_limit(self):
        if self.max_iter is not None:
            return self.max_iter
        return 200 if self.method == "newton" else 5000


class IterationRecord(NamedTuple):
    """State at iterate ``iter`` and the step length taken from it (0 if none)."""

    iter: int
    barrier: float
    decrement: float
    residual: float
    alpha: float
    wallclock_seconds: float


@dataclass
class CenterResult:
    """Outcome of :func:`compute_analytic_center`.

    ``barrier_slack`` is the largest increase of the computed barrier over an
    accepted step (0 when the trace is monotone). Undamped Newton steps may
    show increases up to :func:`barrier_rounding_error`, the rounding level of
    the barrier evaluation; all other steps allow ``1e-12 * max(1, |b|)``.
    """

    x_center: np.ndarray
    barrier_value: float
    iterations: list
    closed_loop_eigs: np.ndarray
    converged: bool
    method: str = "newton"
    init_used: str = ""
    message: str = ""
    extremal: Optional[object] = field(default=None, repr=False)
    barrier_slack: float = 0.0

    @property
    def decrements(self):
        return [r.decrement for r in self.iterations]

    @property
    def barriers(self):
        return [r.barrier for r in self.iterations]

    @property
    def n_iter(self):
        return max(len(self.iterations) - 1, 0)


# ---------------------------------------------------------------- initialization


def init_geometric_mean(x_min, x_max):
    """Matrix geometric mean ``X_- (X_-^{-1} X_+)^{1/2}``.

    Evaluated as ``S (S^{-1} X_+ S^{-1})^{1/2} S`` with ``S = X_-^{1/2}``,
    which is Hermitian by construction.
    """
    for name, X in (("x_min", x_min), ("x_max", x_max)):
        lam = min_eigenvalue(project_hermitian(np.asarray(X)))
        if not lam > 0:
            raise NotPDError(f"{name} is not positive definite (min eigenvalue {lam:.3e})", lam)
    S, S_inv = hermitian_sqrt(x_min, return_inverse=True, tol=0.0)
    inner = hermitian_sqrt(project_hermitian(S_inv @ x_max @ S_inv))
    return project_hermitian(S @ inner @ S)


def shifted_model(M, xi):
    """Model whose LMI is ``W(X) - 2 xi diag(X, I)`` up to a positive factor.

    Continuous: ``{A + xi I, B, C, D - xi I}``.
    Discrete: ``{A/s, B/s, C/s^2, (D - xi I)/s^2}`` with ``s = sqrt(1 - 2 xi)``.
    """
    n, m = M.n, M.m
    if M.is_discrete:
        if not 0 < 2 * xi < 1:
            raise XiTooLargeError(f"xi={xi} must satisfy 0 < 2 xi < 1 for discrete models")
        s = np.sqrt(1.0 - 2.0 * xi)
        return M.replace(A=M.A / s, B=M.B / s, C=M.C / s**2, D=(M.D - xi * np.eye(m)) / s**2)
    return M.replace(A=M.A + xi * np.eye(n), D=M.D - xi * np.eye(m))


def _shifted_weight(M, weight, xi):
    if weight is None:
        return None
    from .model import GeneralizedWeight

    n, m = M.n, M.m
    if M.is_discrete:
        s2 = 1.0 - 2.0 * xi
        return GeneralizedWeight(weight.Q / s2, weight.Cw / s2, (weight.R - 2 * xi * np.eye(m)) / s2)
    return GeneralizedWeight(weight.Q, weight.Cw, weight.R - 2 * xi * np.eye(m))


def default_xi(M, X0, weight=None):
    """``alpha / (4 beta)`` with ``alpha = lambda_min W(X0)``, ``beta = max(||X0||_2, 1)``.

    This is half of the largest admissible shift.
    """
    alpha = min_eigenvalue(lmi_matrix(M, X0, weight))
    if alpha <= 0:
        raise BoundaryError(f"X0 is not strictly feasible (lambda_min(W) = {alpha:.3e})", alpha)
    beta = max(np.linalg.norm(X0, 2), 1.0)
    return alpha / (4.0 * beta)


def init_shifted_riccati(M, xi, weight=None):
    """Average of the extremal solutions of the shifted model.

    Raises
    ------
    XiTooLargeError
        If the shifted model is no longer strictly passive.
    """
    from .riccati import solve_extremal

    try:
        Ms = shifted_model(M, xi)
        pair = solve_extremal(Ms, _shifted_weight(M, weight, xi))
    except (BoundarySpectrumError, SubspaceError, R0SingularError, ValueError) as exc:
        if isinstance(exc, XiTooLargeError):
            raise
        raise XiTooLargeError(f"shifted model with xi={xi} is not strictly passive: {exc}") from exc
    return project_hermitian(0.5 * (pair.x_min + pair.x_max))


def _is_feasible(M, X, weight):
    try:
        return eval_W(M, X, weight).feasible_strict
    except R0SingularError:
        return False


def _scaled_identity(M, weight):
    best, best_val = None, 0.0
    for t in np.logspace(-6, 6, 49):
        X = t * np.eye(M.n)
        val = min_eigenvalue(lmi_matrix(M, X, weight))
        if val > best_val:
            best, best_val = X, val
    return best


def _initial_point(M, options, weight, x0, pair):
    """Return ``(X0, label)`` following the configured fallback chain."""
    if options.init == "given":
        if x0 is None:
            raise ValueError("init='given' requires x0")
        X = project_hermitian(np.asarray(x0))
        if not _is_feasible(M, X, weight):
            raise BoundaryError("given X0 is not strictly feasible", min_eigenvalue(lmi_matrix(M, X, weight)))
        return X, "given"

    chain = {
        "geometric_mean": ("geometric_mean", "shifted_riccati", "identity"),
        "shifted_riccati": ("shifted_riccati", "identity"),
        "identity": ("identity",),
    }[options.init]
    for kind in chain:
        if kind == "geometric_mean" and pair is not None:
            try:
                X = init_geometric_mean(pair.x_min, pair.x_max)
            except (NotPDError, ValueError):
                continue
            if _is_feasible(M, X, weight):
                return X, kind
        elif kind == "shifted_riccati" and pair is not None:
            xi = options.xi
            if xi is None:
                anchors = [0.5 * (pair.x_min + pair.x_max), np.eye(M.n)]
                anchor = next((A for A in anchors if _is_feasible(M, A, weight)), None)
                if anchor is None:
                    continue
                xi = default_xi(M, anchor, weight)
            try:
                X = init_shifted_riccati(M, xi, weight)
            except XiTooLargeError:
                continue
            if _is_feasible(M, X, weight):
                return X, kind
        elif kind == "identity":
            X = np.eye(M.n)
            if _is_feasible(M, X, weight):
                return X, kind
            X = _scaled_identity(M, weight)
            if X is not None:
                return X, "scaled_identity"
    raise NotStrictlyPassiveError("no strictly feasible starting point found; the model is not strictly passive")


# ---------------------------------------------------------------- Newton system


@dataclass(frozen=True)
class NewtonSystem:
    """Hatted data at a feasible X and the Newton equation ``L(Delta_hat) = rhs``.

    ``rhs`` is the gradient of ``ln det W`` in hatted coordinates and ``L`` the
    (positive definite) negative Hessian, so ``Delta_X = T Delta_hat T``.
    """

    time_domain: str
    T: np.ndarray
    T_inv: np.ndarray
    A_hat: np.ndarray
    B_hat: np.ndarray
    Q_hat: np.ndarray
    R0: np.ndarray
    rhs: np.ndarray
    real: bool

    def hessian_apply(self, D):
        """Apply the negative Hessian of ``ln det W`` (hatted) to ``D``."""
        A, Q = self.A_hat, self.Q_hat
        Ah = A.conj().T
        if self.time_domain == DISCRETE:
            AAh = A @ Ah
            out = D - Ah @ D @ A - A @ D @ Ah + AAh @ D @ AAh + AAh @ D @ Q + Q @ D @ AAh + Q @ D @ Q
        else:
            AAh = A @ Ah
            out = A @ D @ A + AAh @ D + Ah @ D @ Ah + D @ AAh + Q @ D + D @ Q
        return project_hermitian(out)

    def hessian_form(self, D):
        """``<L(D), D>``: the second derivative of ``-ln det W`` along ``T D T``."""
        A, Q = self.A_hat, self.Q_hat
        if self.time_domain == DISCRETE:
            return frobenius_real_inner(self.hessian_apply(D), D)
        S = D @ A + A.conj().T @ D
        return float(np.real(np.vdot(S, S)) + 2.0 * np.real(np.trace(D @ Q @ D)))

    def operator(self):
        """Dense Kronecker representation of :meth:`hessian_apply`."""
        A, Q = self.A_hat, self.Q_hat
        Ah = A.conj().T
        n = A.shape[0]
        I = np.eye(n)
        AAh = A @ Ah
        if self.time_domain == DISCRETE:
            terms = [(I, I), (-Ah, A), (-A, Ah), (AAh, AAh), (AAh, Q), (Q, AAh), (Q, Q)]
        else:
            terms = [(A, A), (AAh, I), (Ah, Ah), (I, AAh), (Q, I), (I, Q)]
        return HermitianOperator.from_terms(terms, n, real=self.real)

    def to_hat(self, Delta_X):
        return project_hermitian(self.T_inv @ Delta_X @ self.T_inv)

    def from_hat(self, Delta_hat):
        return project_hermitian(self.T @ Delta_hat @ self.T)


def _system_from(M, ev, weight):
    # P is certified PD by the caller; far from the center cond(P) can exceed
    # the relative cutoff of hermitian_sqrt, so only strict positivity is used
    T, T_inv = hermitian_sqrt(ev.P, return_inverse=True, tol=0.0)
    A_hat = T @ ev.A_F @ T_inv
    B_hat = T @ M.B
    Q_hat = project_hermitian(B_hat @ np.linalg.solve(ev.R0, B_hat.conj().T))
    if M.is_discrete:
        rhs = np.eye(M.n) - Q_hat - A_hat @ A_hat.conj().T
    else:
        rhs = -(A_hat + A_hat.conj().T)
    real = M.is_real and (weight is None or not np.iscomplexobj(weight.Cw) and not np.iscomplexobj(weight.Q))
    return NewtonSystem(M.time_domain, T, T_inv, A_hat, B_hat, Q_hat, ev.R0, project_hermitian(rhs), real)


def _feasible_eval(M, X, weight):
    ev = eval_W(M, X, weight)
    if not ev.feasible_strict:
        lam = ev.min_eig_W
        raise BoundaryError(f"X is not strictly feasible (lambda_min(W) = {lam:.3e})", lam)
    return ev


def newton_system(M, X, weight=None):
    """Assemble the hatted Newton equation at a strictly feasible X."""
    return _system_from(M, _feasible_eval(M, X, weight), weight)


def _solve_newton(system):
    try:
        D_hat = solve_hermitian_operator(system.operator(), system.rhs)
    except SingularOperatorError as exc:
        raise SingularHessianError(str(exc)) from exc
    lam = frobenius_real_inner(D_hat, system.rhs)
    return D_hat, max(lam, 0.0)


def newton_direction(M, X, weight=None):
    """Newton direction for ``ln det W`` at X and the decrement.

    Returns
    -------
    Delta_X : ndarray
        Step in the original coordinates, ``T Delta_hat T``.
    decrement : float
        ``<L^{-1} g, g>`` with ``g`` the hatted gradient (no square root).
    """
    system = newton_system(M, X, weight)
    D_hat, lam = _solve_newton(system)
    return system.from_hat(D_hat), lam


def line_search_newton_alpha(M, X, Delta_hat, weight=None, system=None):
    """One Newton correction in alpha for ``alpha -> ln det W(X + alpha T Delta_hat T)``.

    Returns ``<g, D> / <L(D), D>``; positive whenever ``D`` is an ascent
    direction, so the step always moves uphill on the quadratic model.

    Raises
    ------
    DegenerateDirectionError
        If the curvature along the direction vanishes.
    """
    if system is None:
        system = newton_system(M, X, weight)
    D = project_hermitian(Delta_hat)
    num = frobenius_real_inner(system.rhs, D)
    den = system.hessian_form(D)
    if num == 0.0:
        return 0.0
    if not (np.isfinite(den) and den > 0.0):
        raise DegenerateDirectionError("zero curvature along the search direction")
    return num / den


def _ascent_hat(system, G, metric):
    if metric == "local":
        D = system.rhs
        nrm = np.linalg.norm(D)
        return D / nrm if nrm > 0 else np.zeros_like(D)
    nrm = np.linalg.norm(G)
    return system.to_hat(G / nrm) if nrm > 0 else np.zeros_like(G)


def steepest_ascent_step(M, X, weight=None, metric="euclidean"):
    """Steepest-ascent direction of ``ln det W`` and its line-search step length.

    With ``metric="euclidean"`` the direction is the gradient normalized to
    unit Frobenius norm; with ``metric="local"`` it is ``T g_hat T`` with
    ``g_hat`` the unit hatted gradient. Returns ``(Delta_X, alpha)``;
    ``Delta_X`` is zero at the center.
    """
    ev = _feasible_eval(M, X, weight)
    G = _gradient_from(M, ev)
    system = _system_from(M, ev, weight)
    D_hat = _ascent_hat(system, G, metric)
    if not np.any(D_hat):
        return np.zeros_like(G), 0.0
    alpha = line_search_newton_alpha(M, X, D_hat, weight, system=system)
    return system.from_hat(D_hat), alpha


# ---------------------------------------------------------------- driver


def _barrier_or_inf(M, X, weight):
    try:
        ev = eval_W(M, X, weight)
    except R0SingularError:
        return np.inf
    if not ev.feasible_strict:
        return np.inf
    try:
        return -ev.log_det()
    except np.linalg.LinAlgError:
        return np.inf


def barrier_rounding_error(M, X, ev):
    """Estimate of the rounding error in the computed barrier at X.

    ``W(X)`` is assembled from terms of size about
    ``||X|| (1 + ||A|| + ||B||)^2``; perturbing ``P`` and ``R0`` by machine
    precision times that size moves ``ln det`` by up to the perturbation
    divided by their smallest eigenvalues.
    """
    eps = np.finfo(float).eps
    size = np.linalg.norm(X, 2) * (1.0 + np.linalg.norm(M.A, 2) + np.linalg.norm(M.B, 2)) ** 2
    size += np.linalg.norm(ev.W, 2)
    return float(eps * (M.n + M.m) * size * (1.0 / ev.min_eig_P + 1.0 / ev.min_eig_R0))


def _backtrack(M, X, D, alpha, b0, weight, tol=None):
    """Halve alpha until the step is strictly feasible and does not increase the barrier."""
    if tol is None:
        tol = MONOTONE_SLACK * max(1.0, abs(b0))
    for _ in range(MAX_HALVINGS + 1):
        Xn = project_hermitian(X + alpha * D)
        b = _barrier_or_inf(M, Xn, weight)
        if b <= b0 + tol:
            return Xn, alpha, b
        alpha *= 0.5
    return None, 0.0, b0


def _corrected_alpha(M, X, D, alpha, weight, steps):
    # Newton corrections in alpha on the true barrier along D
    for _ in range(steps):
        Xa = project_hermitian(X + alpha * D)
        if not _is_feasible(M, Xa, weight):
            break
        system = newton_system(M, Xa, weight)
        try:
            step = line_search_newton_alpha(M, Xa, system.to_hat(D), weight, system=system)
        except DegenerateDirectionError:
            break
        if not np.isfinite(step) or alpha + step <= 0:
            break
        alpha += step
    return alpha


def _check_passive(M, weight):
    R = M.R if weight is None else weight.R
    if not M.is_discrete and min_eigenvalue(R) <= 0:
        raise NotStrictlyPassiveError("R = D + D^H is not positive definite")
    from .riccati import solve_extremal

    try:
        pair = solve_extremal(M, weight)
    except (BoundarySpectrumError, R0SingularError) as exc:
        raise NotStrictlyPassiveError(f"model is not strictly passive: {exc}") from exc
    except SubspaceError:
        return None
    # for a plain minimal model, passivity means 0 < X_-; a weighted LMI has no
    # sign constraint on X
    if weight is None and not min_eigenvalue(pair.x_min) > 0:
        raise NotStrictlyPassiveError("the minimal Riccati solution is not positive definite")
    return pair


def compute_analytic_center(M, options=None, weight=None, x0=None, callback: Optional[Callable] = None):
    """Maximize ``ln det W(X)`` over the strictly feasible Hermitian X.

    Parameters
    ----------
    M : StateSpaceModel
    options : CenterOptions, optional
    weight : GeneralizedWeight, optional
    x0 : array_like, optional
        Starting point for ``init='given'``.
    callback : callable, optional
        Called with each :class:`IterationRecord`.

    Returns
    -------
    CenterResult
        ``converged`` is False (not an exception) when the iteration limit
        is reached or the line search stalls.

    Raises
    ------
    NotStrictlyPassiveError
        If no strictly feasible point exists.
    """
    options = options or CenterOptions()
    if x0 is not None and options.init != "given":
        options = replace(options, init="given")
    pair = _check_passive(M, weight)
    X, init_used = _initial_point(M, options, weight, x0, pair)

    start = time.perf_counter()
    slack = 0.0
    refine = 0
    records = []
    converged = False
    message = "iteration limit reached"
    limit = options.iteration_limit
    newton = options.method == "newton"

    k = 0
    while True:
        ev = _feasible_eval(M, X, weight)
        b = -ev.log_det()
        G = _gradient_from(M, ev)
        res = float(np.linalg.norm(G))
        system = _system_from(M, ev, weight)
        if newton:
            D_hat, lam = _solve_newton(system)
        else:
            D_hat = _ascent_hat(system, G, options.ascent_metric)
            lam = np.nan
        # the gradient norm alone is weak when ||P|| is large; once it and the
        # decrement are small, a few more steps also drive the closed-loop
        # center equation to tolerance, unless rounding prevents it
        scale = options.tol_residual * (1.0 + np.linalg.norm(X))
        small = res <= scale
        if small and (not newton or lam <= options.tol_decrement):
            cl_rel = closed_loop_residual(M, ev)
            if cl_rel <= options.tol_residual and closed_loop_residual(M, ev, relative=False) <= scale:
                converged, message = True, "converged"
            elif refine >= REFINE_STEPS:
                converged = True
                message = f"converged; closed-loop residual {cl_rel:.1e} limited by rounding"
            refine += 1
        if converged or k >= limit:
            rec = IterationRecord(k, b, float(lam), res, 0.0, time.perf_counter() - start)
            records.append(rec)
            if callback:
                callback(rec)
            break

        D = system.from_hat(D_hat)
        if newton:
            damped = lam >= options.damping_threshold
            alpha = 1.0 / (1.0 + lam) if damped else 1.0
            tol = MONOTONE_SLACK * max(1.0, abs(b))
            if not damped:
                # full steps decrease the exact barrier here; only rounding in
                # the evaluated barrier can make them look uphill
                tol = max(tol, barrier_rounding_error(M, X, ev))
            Xn, alpha, bn = _backtrack(M, X, D, alpha, b, weight, tol)
            if Xn is not None and bn > b:
                slack = max(slack, bn - b)
            if damped and options.line_search and Xn is not None:
                a2 = _corrected_alpha(M, X, D, alpha, weight, options.line_search)
                X2 = project_hermitian(X + a2 * D)
                b2 = _barrier_or_inf(M, X2, weight)
                if b2 < bn:
                    Xn, alpha, bn = X2, a2, b2
        else:
            alpha = line_search_newton_alpha(M, X, D_hat, weight, system=system)
            Xn, alpha, bn = _backtrack(M, X, D, alpha, b, weight)
        rec = IterationRecord(k, b, float(lam), res, float(alpha), time.perf_counter() - start)
        records.append(rec)
        if callback:
            callback(rec)
        if Xn is None or (bn >= b and np.array_equal(Xn, X)):
            message = "line search stalled"
            if small:
                converged, message = True, "converged (stalled at rounding level)"
            break
        X = Xn
        k += 1

    ev = eval_W(M, X, weight)
    return CenterResult(
        x_center=X,
        barrier_value=-ev.log_det(),
        iterations=records,
        closed_loop_eigs=np.linalg.eigvals(ev.A_F),
        converged=converged,
        method=options.method,
        init_used=init_used,
        message=message,
        extremal=pair,
        barrier_slack=slack,
    )


# ---------------------------------------------------------------- diagnostics


def verify_center_spectrum(M, X, weight=None):
    """Check the closed-loop spectrum expected at the analytic center.

    Continuous: eigenvalues of ``A_F`` on the imaginary axis
    (``max |Re| <= 1e-6 ||A_F||_2``) and ``P A_F + A_F^H P = 0``.
    Discrete: spectral radius of ``A_F`` below ``1 - 1e-10`` and
    ``A_F P^{-1} A_F^H - P^{-1} + B R0^{-1} B^H = 0``.
    """
    ev = eval_W(M, X, weight)
    A_F, P = ev.A_F, ev.P
    eigs = np.linalg.eigvals(A_F)
    norm_AF = float(np.linalg.norm(A_F, 2))
    if M.is_discrete:
        rho = float(np.max(np.abs(eigs)))
        P_inv = np.linalg.inv(P)
        E = A_F @ P_inv @ A_F.conj().T - P_inv + M.B @ np.linalg.solve(ev.R0, M.B.conj().T)
        return {
            "domain": DISCRETE,
            "spectral_radius": rho,
            "spectrum_ok": bool(rho < 1.0 - 1e-10),
            "equation_residual": float(np.linalg.norm(E)),
            "eigenvalues": eigs,
        }
    max_re = float(np.max(np.abs(eigs.real)))
    E = P @ A_F + A_F.conj().T @ P
    return {
        "domain": CONTINUOUS,
        "max_abs_real": max_re,
        "norm_A_F": norm_AF,
        "spectrum_ok": bool(max_re <= 1e-6 * max(norm_AF, np.finfo(float).tiny)),
        "equation_residual": float(np.linalg.norm(E)),
        "eigenvalues": eigs,
    }


def scalar_center_reference(a, b, c, d, time_domain=CONTINUOUS):
    """Closed-form analytic center of a real scalar model and ``det W`` there.

    Continuous: ``x_a = c/b - 2ad/b^2``, ``det = 4 (ad/b^2)(ad - bc)``;
    requires ``a < 0``, ``d > 0``, ``(da - cb)/a > 0``.
    Discrete: ``x_a = (d - a^2 d + abc)/b^2``,
    ``det = (a^2 - 1)(bc - (a-1)d)(bc - (a+1)d)/b^2``; requires ``a^2 < 1``,
    ``bc - (a-1)d > 0`` and ``(a+1)d - bc > 0``.
    """
    a, b, c, d = (float(v) for v in (a, b, c, d))
    if b == 0:
        raise InvalidScalarModelError("b must be nonzero")
    if time_domain == DISCRETE:
        if not (a * a < 1 and b * c - (a - 1) * d > 0 and (a + 1) * d - b * c > 0):
            raise InvalidScalarModelError("scalar discrete model is not strictly passive")
        x = (d - a * a * d + a * b * c) / b**2
        det = (a * a - 1) * (b * c - (a - 1) * d) * (b * c - (a + 1) * d) / b**2
        return x, det
    if time_domain != CONTINUOUS:
        raise ValueError(f"unknown time domain {time_domain!r}")
    if not (a < 0 and d > 0 and (d * a - c * b) / a > 0):
        raise InvalidScalarModelError("scalar continuous model is not strictly passive")
    x = c / b - 2 * a * d / b**2
    det = 4 * (a * d / b**2) * (a * d - b * c)
    return x, det
