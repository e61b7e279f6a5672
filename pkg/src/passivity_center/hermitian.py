"""Arithmetic on the real vector space of Hermitian matrices.

Hermitian matrices are carried as plain 2-D numpy arrays; ``project_hermitian``
is the single place where the symmetry invariant is (re)established.
Linear maps on this space are represented densely in an orthonormal basis
(with respect to ``frobenius_real_inner``) so that Newton systems become
ordinary real linear systems.
"""
from dataclasses import dataclass
from functools import lru_cache

import numpy as np

from .errors import NotPDError, NotPSDError, ShapeError, SingularOperatorError

__all__ = [
    "frobenius_real_inner",
    "project_hermitian",
    "is_hermitian",
    "hermitian_sqrt",
    "min_eigenvalue",
    "min_eigenpair",
    "hermitian_basis",
    "to_coords",
    "from_coords",
    "HermitianOperator",
    "solve_hermitian_operator",
]

PSD_TOL = 1e-10
SOLVE_TOL = 1e-12
COND_LIMIT = 1e14


def _square(M, name="matrix"):
    M = np.atleast_2d(np.asarray(M))
    if M.ndim != 2 or M.shape[0] != M.shape[1]:
        raise ShapeError(f"{name} must be square, got shape {M.shape}")
    return M


def frobenius_real_inner(X, Y):
    """Real part of ``trace(X^H Y)``."""
    X = np.atleast_2d(np.asarray(X))
    Y = np.atleast_2d(np.asarray(Y))
    if X.shape != Y.shape:
        raise ShapeError(f"shape mismatch {X.shape} vs {Y.shape}")
    return float(np.real(np.vdot(X, Y)))


def project_hermitian(M):
    """Return ``(M + M^H) / 2``.

    The result is exactly Hermitian: the diagonal is real and the
    strict lower triangle is the conjugate of the strict upper one.
    """
    M = _square(M)
    H = 0.5 * (M + M.conj().T)
    if np.iscomplexobj(H):
        # enforce bitwise symmetry (addition is commutative, but be explicit)
        iu = np.triu_indices(H.shape[0], 1)
        H[(iu[1], iu[0])] = H[iu].conj()
        H[np.diag_indices(H.shape[0])] = H.diagonal().real
    else:
        H = np.triu(H) + np.triu(H, 1).T
    return H


def is_hermitian(M, tol=0.0):
    M = np.asarray(M)
    if M.ndim != 2 or M.shape[0] != M.shape[1]:
        return False
    return bool(np.max(np.abs(M - M.conj().T), initial=0.0) <= tol)


def hermitian_sqrt(P, require_pd=False, return_inverse=False, tol=PSD_TOL):
    """Hermitian positive semidefinite square root via eigendecomposition.

    Parameters
    ----------
    P : (n, n) array_like
        Hermitian positive semidefinite matrix.
    require_pd : bool
        Demand strict positive definiteness.
    return_inverse : bool
        Also return ``T^{-1}``; implies ``require_pd``.
    tol : float
        Relative eigenvalue cutoff, measured against ``||P||_2``.

    Returns
    -------
    T : ndarray, or ``(T, T_inv)`` if ``return_inverse``.
    """
    P = project_hermitian(P)
    w, V = np.linalg.eigh(P)
    scale = max(np.max(np.abs(w), initial=0.0), np.finfo(float).tiny)
    if w[0] < -tol * scale:
        raise NotPSDError(f"matrix is not PSD (min eigenvalue {w[0]:.3e})", w[0])
    if (require_pd or return_inverse) and w[0] <= tol * scale:
        raise NotPDError(f"matrix is not PD (min eigenvalue {w[0]:.3e})", w[0])
    s = np.sqrt(np.clip(w, 0.0, None))
    T = project_hermitian((V * s) @ V.conj().T)
    if return_inverse:
        T_inv = project_hermitian((V / s) @ V.conj().T)
        return T, T_inv
    return T


def min_eigenvalue(H):
    H = _square(H)
    return float(np.linalg.eigvalsh(project_hermitian(H))[0])


def min_eigenpair(H):
    """Smallest eigenvalue of a Hermitian matrix and a unit eigenvector."""
    w, V = np.linalg.eigh(project_hermitian(_square(H)))
    return float(w[0]), V[:, 0]


@lru_cache(maxsize=64)
def _basis_matrix(n, real):
    cols = []
    for i in range(n):
        E = np.zeros((n, n), dtype=float if real else complex)
        E[i, i] = 1.0
        cols.append(E.ravel())
    r2 = 1.0 / np.sqrt(2.0)
    for i in range(n):
        for j in range(i + 1, n):
            E = np.zeros((n, n), dtype=float if real else complex)
            E[i, j] = E[j, i] = r2
            cols.append(E.ravel())
            if not real:
                E = np.zeros((n, n), dtype=complex)
                E[i, j] = 1j * r2
                E[j, i] = -1j * r2
                cols.append(E.ravel())
    V = np.array(cols).T
    V.setflags(write=False)
    return V


def hermitian_basis(n, real=False):
    """Orthonormal basis of the Hermitian (or real symmetric) n x n matrices.

    Returned as an ``(n*n, d)`` array whose columns are row-major
    vectorizations; ``d`` is ``n*n`` in the complex case and
    ``n*(n+1)/2`` in the real case.
    """
    return _basis_matrix(int(n), bool(real))


def to_coords(H, real=None):
    H = _square(H)
    if real is None:
        real = not np.iscomplexobj(H)
    V = hermitian_basis(H.shape[0], real)
    return np.real(V.conj().T @ H.ravel())


def from_coords(c, n, real):
    V = hermitian_basis(n, real)
    return project_hermitian((V @ np.asarray(c, dtype=float)).reshape(n, n))


@dataclass(frozen=True)
class HermitianOperator:
    """Real-linear map on Hermitian n x n matrices, stored as a dense real matrix.

    ``matrix[i, j] = <E_i, L(E_j)>`` for the orthonormal basis ``E`` returned by
    :func:`hermitian_basis`. The map is symmetric whenever ``L`` is self-adjoint.
    """

    dim: int
    real: bool
    matrix: np.ndarray

    @classmethod
    def from_terms(cls, terms, n, real=None):
        """Assemble ``Delta -> herm(sum_k L_k Delta R_k)`` through Kronecker products.

        ``terms`` is a sequence of ``(L, R)`` pairs. With row-major
        vectorization, ``vec(L X R) = (L kron R^T) vec(X)``.
        """
        terms = [(np.asarray(L), np.asarray(R)) for L, R in terms]
        if real is None:
            real = not any(np.iscomplexobj(L) or np.iscomplexobj(R) for L, R in terms)
        K = np.zeros((n * n, n * n), dtype=float if real else complex)
        for L, R in terms:
            K += np.kron(L, R.T)
        V = hermitian_basis(n, real)
        M = np.real(V.conj().T @ (K @ V))
        return cls(n, bool(real), M)

    @classmethod
    def from_function(cls, fn, n, real=False):
        """Build the dense matrix by applying ``fn`` to every basis element."""
        V = hermitian_basis(n, real)
        d = V.shape[1]
        M = np.empty((d, d))
        for j in range(d):
            out = project_hermitian(fn(V[:, j].reshape(n, n)))
            M[:, j] = to_coords(out, real)
        return cls(n, bool(real), M)

    @property
    def real_dim(self):
        return self.matrix.shape[0]

    def apply(self, Delta):
        return from_coords(self.matrix @ to_coords(Delta, self.real), self.dim, self.real)

    def __call__(self, Delta):
        return self.apply(Delta)


def solve_hermitian_operator(L, rhs, tol_rel=SOLVE_TOL, cond_limit=COND_LIMIT):
    """Solve ``L(Delta) = rhs`` for Hermitian ``Delta``.

    One step of iterative refinement is applied when the first residual
    exceeds ``tol_rel * ||rhs||_F``.

    Raises
    ------
    SingularOperatorError
        If the condition number of the dense representation exceeds
        ``cond_limit``.
    """
    rhs = project_hermitian(rhs)
    if rhs.shape[0] != L.dim:
        raise ShapeError(f"rhs has size {rhs.shape[0]}, operator acts on {L.dim}")
    if np.iscomplexobj(rhs) and L.real and np.any(np.imag(rhs) != 0):
        raise ShapeError("complex right-hand side for an operator on real symmetric matrices")
    M = L.matrix
    cond = np.linalg.cond(M)
    if not np.isfinite(cond) or cond > cond_limit:
        raise SingularOperatorError(f"operator is numerically singular (cond={cond:.3e})", cond)
    b = to_coords(rhs.real if L.real else rhs, L.real)
    x = np.linalg.solve(M, b)
    r = b - M @ x
    bnorm = np.linalg.norm(b)
    if np.linalg.norm(r) > tol_rel * bnorm:
        x = x + np.linalg.solve(M, r)
    return from_coords(x, L.dim, L.real)
