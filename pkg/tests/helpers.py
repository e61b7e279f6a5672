"""Independent oracles shared by the test modules.

Nothing here calls the factorized code paths under test: log-determinants come
from ``numpy.linalg.slogdet`` on the assembled LMI, derivatives from finite
differences.
"""
import numpy as np

from passivity_center.hermitian import min_eigenvalue, project_hermitian
from passivity_center.lmi import lmi_matrix


def random_hermitian(rng, n, complex_data=False):
    H = rng.standard_normal((n, n))
    if complex_data:
        H = H + 1j * rng.standard_normal((n, n))
    return project_hermitian(H)


def logdet_direct(M, X, weight=None):
    sign, val = np.linalg.slogdet(lmi_matrix(M, X, weight))
    assert sign.real > 0
    return float(val)


def random_feasible_X(M, rng, base=None, scale=0.5, weight=None):
    """A strictly feasible point near ``base`` (default I, feasible for generated models)."""
    base = np.eye(M.n) if base is None else base
    H = random_hermitian(rng, M.n, not M.is_real)
    H /= np.linalg.norm(H, 2)
    t = scale * max(np.linalg.norm(base, 2), 1.0)
    for _ in range(60):
        X = project_hermitian(base + t * H)
        if min_eigenvalue(lmi_matrix(M, X, weight)) > 0 and min_eigenvalue(X) > 0:
            return X
        t *= 0.5
    return base


def fd_directional(f, X, D, h):
    return (f(X + h * D) - f(X - h * D)) / (2.0 * h)


def quadratic_roots(a2, a1, a0):
    """Real roots of ``a2 x^2 + a1 x + a0`` in increasing order."""
    disc = np.sqrt(a1 * a1 - 4 * a2 * a0)
    r = sorted([(-a1 - disc) / (2 * a2), (-a1 + disc) / (2 * a2)])
    return r[0], r[1]
