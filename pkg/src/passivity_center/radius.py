"""Lower bounds on the X-passivity radius and empirical perturbation probes.

For a fixed feasible X the X-passivity radius is the norm of the smallest
structured perturbation ``{dA, dB, dC, dD}`` of the model that makes
``W(X, M + Delta)`` singular. It is bounded below by ``lambda_min(Y W(X) Y)``
for a domain-dependent scaling Y.
"""
from dataclasses import dataclass
from typing import NamedTuple

import numpy as np

from .errors import BoundaryError, ShapeError
from .hermitian import hermitian_sqrt, min_eigenvalue, project_hermitian
from .lmi import lmi_matrix
from .model import DISCRETE

__all__ = [
    "RadiusBound",
    "Perturbation",
    "x_passivity_bound",
    "x_passivity_bound_continuous",
    "x_passivity_bound_discrete",
    "perturbation_matrix",
    "perturbation_norm",
    "perturbed_model",
    "random_perturbation",
    "probe_perturbations",
    "scalar_destructive_perturbations",
]

BOUNDARY_TOL = 1e-8


@dataclass(frozen=True)
class RadiusBound:
    value: float
    scaling_Y: np.ndarray
    x_used: np.ndarray
    domain: str
    approximate: bool


class Perturbation(NamedTuple):
    dA: np.ndarray
    dB: np.ndarray
    dC: np.ndarray
    dD: np.ndarray


def _checked_W(M, X):
    X = project_hermitian(np.asarray(X))
    W = lmi_matrix(M, X)
    lam = min_eigenvalue(W)
    # points on the boundary (up to rounding) are accepted and give value ~ 0
    if lam < -BOUNDARY_TOL * max(1.0, np.linalg.norm(W, 2)):
        raise BoundaryError(f"X is not feasible (lambda_min(W) = {lam:.3e})", lam)
    return X, W


def _bound(M, X, Y, approximate):
    value = max(min_eigenvalue(Y @ lmi_matrix(M, X) @ Y), 0.0)
    return RadiusBound(float(value), Y, X, M.time_domain, approximate)


def x_passivity_bound_continuous(M, X):
    """``lambda_min(Y_c W_c(X) Y_c)`` with ``Y_c = diag(I + X^2, I)^{-1/2}``.

    Any perturbation with :func:`perturbation_norm` below this value keeps
    ``W_c(X, M + Delta)`` positive definite.
    """
    if M.is_discrete:
        raise ValueError("model is discrete; use x_passivity_bound_discrete")
    X, _ = _checked_W(M, X)
    n, m = M.n, M.m
    _, Y11 = hermitian_sqrt(np.eye(n) + X @ X, return_inverse=True, tol=0.0)
    Y = np.zeros((n + m, n + m), dtype=Y11.dtype)
    Y[:n, :n] = Y11
    Y[n:, n:] = np.eye(m)
    return _bound(M, X, Y, approximate=False)


def x_passivity_bound_discrete(M, X):
    """Discrete bound evaluated at ``Delta = 0`` (flagged approximate).

    ``Z_d = -[X (A - I)/2, X B/2]`` and ``Y_d = (I + Z_d^H Z_d)^{-1/2}``.
    """
    if not M.is_discrete:
        raise ValueError("model is continuous; use x_passivity_bound_continuous")
    X, _ = _checked_W(M, X)
    n = M.n
    Z = -np.hstack([X @ (M.A - np.eye(n)) / 2.0, X @ M.B / 2.0])
    _, Y = hermitian_sqrt(np.eye(Z.shape[1]) + Z.conj().T @ Z, return_inverse=True, tol=0.0)
    return _bound(M, X, Y, approximate=True)


def x_passivity_bound(M, X):
    if M.is_discrete:
        return x_passivity_bound_discrete(M, X)
    return x_passivity_bound_continuous(M, X)


def perturbation_matrix(delta):
    """Assemble ``[[0, dA, dB], [dA^H, 0, dC^H], [dB^H, dC, dD + dD^H]]``."""
    dA, dB, dC, dD = (np.atleast_2d(np.asarray(v)) for v in delta)
    n, m = dB.shape
    if dA.shape != (n, n) or dC.shape != (m, n) or dD.shape != (m, m):
        raise ShapeError(
            f"inconsistent perturbation shapes dA {dA.shape}, dB {dB.shape}, dC {dC.shape}, dD {dD.shape}"
        )
    Z = np.zeros((n, n))
    return np.block([
        [Z, dA, dB],
        [dA.conj().T, Z, dC.conj().T],
        [dB.conj().T, dC, dD + dD.conj().T],
    ])


def perturbation_norm(delta):
    """Spectral norm of :func:`perturbation_matrix`."""
    return float(np.linalg.norm(perturbation_matrix(delta), 2))


def perturbed_model(M, delta):
    dA, dB, dC, dD = delta
    return M.replace(A=M.A + dA, B=M.B + dB, C=M.C + dC, D=M.D + dD)


def random_perturbation(M, rng, complex_data=None):
    """Entrywise Gaussian structured perturbation with unit :func:`perturbation_norm`."""
    if complex_data is None:
        complex_data = not M.is_real
    n, m = M.n, M.m

    def draw(*shape):
        X = rng.standard_normal(shape)
        if complex_data:
            X = X + 1j * rng.standard_normal(shape)
        return X

    delta = Perturbation(draw(n, n), draw(n, m), draw(m, n), draw(m, m))
    s = perturbation_norm(delta)
    return Perturbation(*(v / s for v in delta))


def probe_perturbations(M, X, bound, samples=100, margin=0.5, seed=0):
    """Check ``W(X, M + Delta)`` for random Delta with norm ``margin * bound.value``.

    ``margin`` may be a number or a sequence. Returns a dict keyed by margin
    with the number of samples, how many stayed positive definite, the pass
    rate and the smallest ``lambda_min`` seen. Continuous bounds with
    ``margin < 1`` guarantee a pass rate of 1; discrete bounds are only
    approximate.
    """
    margins = np.atleast_1d(np.asarray(margin, dtype=float))
    rng = np.random.default_rng(seed)
    directions = [random_perturbation(M, rng) for _ in range(int(samples))]
    report = {}
    for mu in margins:
        scale = mu * bound.value
        lams = []
        for d in directions:
            delta = Perturbation(*(scale * v for v in d))
            W = _perturbed_lmi(M, X, delta)
            lams.append(min_eigenvalue(W))
        lams = np.asarray(lams)
        n_pd = int(np.sum(lams > 0))
        report[float(mu)] = {
            "samples": int(samples),
            "positive_definite": n_pd,
            "pass_rate": n_pd / samples if samples else 1.0,
            "min_lambda": float(lams.min()) if lams.size else float(min_eigenvalue(lmi_matrix(M, X))),
        }
    return report


def _perturbed_lmi(M, X, delta):
    # built directly: a perturbation may break the model's rank assumptions
    dA, dB, dC, dD = delta
    A, B, C, D = M.A + dA, M.B + dB, M.C + dC, M.D + dD
    X = project_hermitian(np.asarray(X))
    Ah, Bh = A.conj().T, B.conj().T
    if M.time_domain == DISCRETE:
        W = np.block([[X - Ah @ X @ A, C.conj().T - Ah @ X @ B], [C - Bh @ X @ A, D + D.conj().T - Bh @ X @ B]])
    else:
        W = np.block([[-X @ A - Ah @ X, C.conj().T - X @ B], [C - Bh @ X, D + D.conj().T]])
    return project_hermitian(W)


def scalar_destructive_perturbations(a, b, c, d):
    """Perturbations of a real scalar continuous model that destroy strict passivity.

    Returns a dict of :class:`Perturbation` for ``d + dd = 0``, ``a + da = 0``
    and the smallest rank drop of ``[[a, b], [c, d]]`` (which makes
    ``(d + dd)(a + da) - (c + dc)(b + db) = 0``).
    """
    one = lambda v: np.array([[float(v)]])  # noqa: E731
    z = one(0.0)
    U, s, Vt = np.linalg.svd(np.array([[a, b], [c, d]], dtype=float))
    E = -s[1] * np.outer(U[:, 1], Vt[1])
    return {
        "d": Perturbation(z, z, z, one(-d)),
        "a": Perturbation(one(-a), z, z, z),
        "rank_drop": Perturbation(one(E[0, 0]), one(E[0, 1]), one(E[1, 0]), one(E[1, 1])),
    }
