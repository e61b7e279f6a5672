"""State-space models, generalized weights and Popov-function evaluation."""
from dataclasses import dataclass
from typing import NamedTuple

import numpy as np

from .errors import PoleError, ShapeError
from .hermitian import is_hermitian, min_eigenvalue, project_hermitian

__all__ = [
    "CONTINUOUS",
    "DISCRETE",
    "ModelError",
    "StateSpaceModel",
    "GeneralizedWeight",
    "MinimalityReport",
    "is_minimal",
    "numerical_rank",
    "popov_eval",
    "popov_at_infinity",
    "system_pencil_eval",
    "random_passive_model",
]

CONTINUOUS = "continuous"
DISCRETE = "discrete"
TIME_DOMAINS = (CONTINUOUS, DISCRETE)
MAX_MINIMALITY_DIM = 100


class ModelError(ShapeError):
    """Model data violates a structural assumption (shape, rank, invertible R)."""


def numerical_rank(M):
    """Rank with the SVD rule ``sigma_k > max(shape) * eps * sigma_1``."""
    M = np.atleast_2d(np.asarray(M))
    if M.size == 0:
        return 0
    s = np.linalg.svd(M, compute_uv=False)
    if s[0] == 0.0:
        return 0
    return int(np.sum(s > max(M.shape) * np.finfo(float).eps * s[0]))


def _as_matrix(M, name):
    M = np.asarray(M)
    if M.ndim == 0:
        M = M.reshape(1, 1)
    if M.ndim != 2:
        raise ModelError(f"{name} must be a 2-D array, got ndim={M.ndim}")
    if not np.all(np.isfinite(M)):
        raise ModelError(f"{name} contains non-finite entries")
    if np.iscomplexobj(M) and not np.any(np.imag(M)):
        M = np.real(M)
    M = M.astype(complex if np.iscomplexobj(M) else float)
    M.setflags(write=False)
    return M


@dataclass(frozen=True)
class StateSpaceModel:
    """LTI system ``{A, B, C, D}`` tagged with its time domain.

    Construction enforces consistent shapes, ``rank B = rank C = m`` and an
    invertible ``R = D + D^H``.
    """

    A: np.ndarray
    B: np.ndarray
    C: np.ndarray
    D: np.ndarray
    time_domain: str = CONTINUOUS

    def __post_init__(self):
        if self.time_domain not in TIME_DOMAINS:
            raise ModelError(f"time_domain must be one of {TIME_DOMAINS}, got {self.time_domain!r}")
        A = _as_matrix(self.A, "A")
        B = _as_matrix(self.B, "B")
        C = _as_matrix(self.C, "C")
        D = _as_matrix(self.D, "D")
        n, m = B.shape
        if A.shape != (n, n):
            raise ModelError(f"A has shape {A.shape}, expected ({n}, {n})")
        if C.shape != (m, n):
            raise ModelError(f"C has shape {C.shape}, expected ({m}, {n})")
        if D.shape != (m, m):
            raise ModelError(f"D has shape {D.shape}, expected ({m}, {m})")
        if n < 1 or m < 1:
            raise ModelError("n and m must be at least 1")
        if numerical_rank(B) != m:
            raise ModelError("rank(B) must equal m")
        if numerical_rank(C) != m:
            raise ModelError("rank(C) must equal m")
        if numerical_rank(D + D.conj().T) != m:
            raise ModelError("R = D + D^H must be invertible")
        for name, val in zip("ABCD", (A, B, C, D)):
            object.__setattr__(self, name, val)

    @property
    def n(self):
        return self.A.shape[0]

    @property
    def m(self):
        return self.B.shape[1]

    @property
    def R(self):
        return project_hermitian(self.D + self.D.conj().T)

    @property
    def is_real(self):
        return not any(np.iscomplexobj(M) for M in (self.A, self.B, self.C, self.D))

    @property
    def is_discrete(self):
        return self.time_domain == DISCRETE

    def replace(self, **changes):
        kw = dict(A=self.A, B=self.B, C=self.C, D=self.D, time_domain=self.time_domain)
        kw.update(changes)
        return StateSpaceModel(**kw)

    def default_weight(self):
        """Weight reproducing the plain model LMI: ``Q = 0``, ``Cw = C``, ``R = D + D^H``."""
        return GeneralizedWeight(np.zeros((self.n, self.n), dtype=self.A.dtype), self.C, self.R)


@dataclass(frozen=True)
class GeneralizedWeight:
    """Constant block ``[[Q, Cw^H], [Cw, R]]`` of the LMI."""

    Q: np.ndarray
    Cw: np.ndarray
    R: np.ndarray

    def __post_init__(self):
        Q = _as_matrix(self.Q, "Q")
        Cw = _as_matrix(self.Cw, "Cw")
        R = _as_matrix(self.R, "R")
        m, n = Cw.shape
        if Q.shape != (n, n) or R.shape != (m, m):
            raise ModelError(f"weight blocks inconsistent: Q {Q.shape}, Cw {Cw.shape}, R {R.shape}")
        for name, M in (("Q", Q), ("R", R)):
            if not is_hermitian(M, tol=1e-12 * max(1.0, np.abs(M).max())):
                raise ModelError(f"weight block {name} must be Hermitian")
        object.__setattr__(self, "Q", project_hermitian(Q))
        object.__setattr__(self, "Cw", Cw)
        object.__setattr__(self, "R", project_hermitian(R))

    @property
    def block(self):
        return np.block([[self.Q, self.Cw.conj().T], [self.Cw, self.R]])

    @classmethod
    def from_block(cls, W, n):
        W = project_hermitian(W)
        return cls(W[:n, :n], W[n:, :n], W[n:, n:])


class MinimalityReport(NamedTuple):
    controllable: bool
    reconstructable: bool

    @property
    def minimal(self):
        return self.controllable and self.reconstructable

    def __bool__(self):
        return self.minimal


def _krylov_dimension(A, B):
    # block Krylov space grown with re-orthogonalised QR; avoids the column
    # scaling problems of the raw matrix [B, AB, ..., A^{n-1}B]
    n = A.shape[0]
    eps = np.finfo(float).eps
    tol = n * eps * max(np.linalg.norm(B, 2), 1.0) * max(np.linalg.norm(A, 2), 1.0)
    U, s, _ = np.linalg.svd(B, full_matrices=False)
    if s.size == 0 or s[0] == 0:
        return 0
    V = U[:, s > max(B.shape) * eps * s[0]]
    basis = V
    for _ in range(n):
        if basis.shape[1] >= n:
            break
        W = A @ V
        for _ in range(2):
            W = W - basis @ (basis.conj().T @ W)
        if W.size == 0:
            break
        U, s, _ = np.linalg.svd(W, full_matrices=False)
        keep = s > tol
        if not np.any(keep):
            break
        V = U[:, keep]
        basis = np.hstack([basis, V])
    return basis.shape[1]


def is_minimal(M):
    """Controllability of ``(A, B)`` and of ``(A^H, C^H)``.

    Uses the dimension of the block Krylov subspace, i.e. the numerical rank
    of ``[B, AB, ..., A^{n-1} B]``.
    """
    if M.n > MAX_MINIMALITY_DIM:
        raise ValueError(f"minimality check limited to n <= {MAX_MINIMALITY_DIM}")
    ctrb = _krylov_dimension(M.A, M.B) == M.n
    obsv = _krylov_dimension(M.A.conj().T, M.C.conj().T) == M.n
    return MinimalityReport(bool(ctrb), bool(obsv))


def _resolvent_apply(A, point, B):
    n = A.shape[0]
    K = point * np.eye(n) - A
    if np.linalg.cond(K) > 1e14:
        raise PoleError(f"{point} is (numerically) an eigenvalue of A")
    return np.linalg.solve(K, B)


def transfer_eval(M, point):
    """``D + C (point I - A)^{-1} B``."""
    return M.D + M.C @ _resolvent_apply(M.A, point, M.B)


def popov_eval(M, freq):
    """Popov function on the stability boundary.

    Continuous models return ``Phi_c(i w)``; discrete models return
    ``Phi_d(exp(i w))``. Both equal ``T^H + T`` at the sample point.
    """
    point = 1j * freq if not M.is_discrete else np.exp(1j * freq)
    T = transfer_eval(M, point)
    return project_hermitian(T + T.conj().T)


def popov_at_infinity(M):
    """Limit of the continuous Popov function as ``w -> inf``: ``R``."""
    return M.R


def system_pencil_eval(M, point):
    """Evaluate the (2n+m)-square system pencil ``S_c(s)`` or ``S_d(z)``."""
    A, B, C, R = M.A, M.B, M.C, M.R
    n, m = M.n, M.m
    I = np.eye(n)
    Z = np.zeros((n, n))
    Ah = A.conj().T
    if M.is_discrete:
        rows = [
            [Z, A - point * I, B],
            [point * Ah - I, Z, C.conj().T],
            [point * B.conj().T, C, R],
        ]
    else:
        rows = [
            [Z, A - point * I, B],
            [Ah + point * I, Z, C.conj().T],
            [B.conj().T, C, R],
        ]
    S = np.block(rows)
    return S.astype(complex) if np.iscomplexobj(S) or np.iscomplex(point) else S


def random_passive_model(n, m, seed, time_domain=CONTINUOUS, complex_data=False):
    """Random minimal, strictly passive model with ``X = I`` strictly feasible.

    ``C = B^H`` and ``D = delta I`` so that ``W(I)`` is block diagonal in the
    continuous case. Discrete models have ``||A||_2 < 1`` and ``delta`` doubled
    until ``W_d(I)`` is positive definite.
    """
    if n < 1 or m < 1:
        raise ValueError("n and m must be at least 1")
    rng = np.random.default_rng(seed)

    def draw(*shape):
        X = rng.standard_normal(shape)
        if complex_data:
            X = X + 1j * rng.standard_normal(shape)
        return X

    I = np.eye(n)
    while True:
        G = draw(n, n)
        A = G - (np.linalg.norm(G + G.conj().T, 2) / 2 + 1.0) * I
        B = draw(n, m)
        if time_domain == DISCRETE:
            A = A / (np.linalg.norm(A, 2) + 1.0)
        C = B.conj().T
        delta = 1.0
        model = StateSpaceModel(A, B, C, delta * np.eye(m), time_domain)
        if time_domain == DISCRETE:
            from .lmi import lmi_matrix  # local import: lmi depends on this module

            while min_eigenvalue(lmi_matrix(model, I)) <= 0:
                delta *= 2.0
                model = model.replace(D=delta * np.eye(m))
        if is_minimal(model):
            return model
