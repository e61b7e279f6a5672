import numpy as np
import pytest

from passivity_center.center import (
    barrier_rounding_error,
    CenterOptions,
    compute_analytic_center,
    init_geometric_mean,
    init_shifted_riccati,
    line_search_newton_alpha,
    newton_direction,
    newton_system,
    scalar_center_reference,
    steepest_ascent_step,
    verify_center_spectrum,
)
from passivity_center.errors import (
    InvalidScalarModelError,
    NotPDError,
    NotStrictlyPassiveError,
    XiTooLargeError,
)
from passivity_center.hermitian import frobenius_real_inner, is_hermitian, min_eigenvalue, project_hermitian
from passivity_center.lmi import barrier, eval_W, lmi_matrix, stationarity_residual
from passivity_center.model import GeneralizedWeight, StateSpaceModel, random_passive_model
from passivity_center.riccati import solve_extremal

from helpers import logdet_direct, random_feasible_X, random_hermitian

DOMAINS = ["continuous", "discrete"]


def assert_monotone(M, r):
    """Non-increasing to 1e-12 relative, or to the rounding level of the barrier."""
    b = np.asarray(r.barriers)
    noise = barrier_rounding_error(M, r.x_center, eval_W(M, r.x_center))
    assert r.barrier_slack <= noise
    assert np.all(np.diff(b) <= np.maximum(1e-12 * np.maximum(1.0, np.abs(b[:-1])), noise))


def assert_quadratic_tail(r, tol_decrement=1e-10):
    lam = r.decrements
    for k in range(len(lam) - 1):
        if tol_decrement < lam[k] < 0.25:
            assert lam[k + 1] <= 2 * lam[k] ** 2, (k, lam[k], lam[k + 1])


# ------------------------------------------------------------ closed forms


def test_scalar_reference_examples():
    assert np.allclose(scalar_center_reference(-1, 1, 1, 2, "continuous"), (5, 24))
    assert np.allclose(scalar_center_reference(0.5, 1, 0.25, 1, "discrete"), (0.875, 0.703125))
    assert np.allclose(scalar_center_reference(-1, 1, 0, 1, "continuous"), (2, 4))


@pytest.mark.parametrize("args", [(1, 1, 1, 2, "continuous"), (-1, 1, 1, -2, "continuous"), (1.5, 1, 0.25, 1, "discrete")])
def test_scalar_reference_invalid(args):
    with pytest.raises(InvalidScalarModelError):
        scalar_center_reference(*args)


@pytest.mark.parametrize("method", ["newton", "ascent"])
def test_scalar_centers(scalar_c, scalar_d, method):
    opts = CenterOptions(method=method, tol_residual=1e-12)
    for M, (xa, det) in ((scalar_c, (5.0, 24.0)), (scalar_d, (0.875, 0.703125))):
        r = compute_analytic_center(M, opts)
        assert r.converged
        assert abs(r.x_center[0, 0] - xa) <= 1e-8
        assert abs(np.exp(-r.barrier_value) - det) <= 1e-8 * det


@pytest.mark.parametrize("seed", range(6))
def test_scalar_random_matches_closed_form(seed):
    rng = np.random.default_rng(seed)
    a, b, d = -rng.uniform(0.2, 2), rng.uniform(0.5, 2), rng.uniform(0.5, 2)
    c = a * d / b + rng.uniform(0.1, 2)  # strict passivity needs bc > ad
    xa, det = scalar_center_reference(a, b, c, d, "continuous")
    r = compute_analytic_center(StateSpaceModel(a, b, c, d))
    assert np.isclose(r.x_center[0, 0], xa, rtol=1e-9)
    assert np.isclose(np.exp(-r.barrier_value), det, rtol=1e-9)


# ------------------------------------------------------------ initialization


def test_geometric_mean_examples():
    X = np.array([[2.0, 0.5], [0.5, 1.0]])
    assert np.allclose(init_geometric_mean(X, X), X)
    assert np.allclose(init_geometric_mean(np.eye(2), 4 * np.eye(2)), 2 * np.eye(2))
    assert np.allclose(init_geometric_mean(np.diag([1.0, 4.0]), np.diag([9.0, 16.0])), np.diag([3.0, 8.0]))
    with pytest.raises(NotPDError):
        init_geometric_mean(np.diag([1.0, -1.0]), np.eye(2))


def test_geometric_mean_properties():
    rng = np.random.default_rng(0)
    G1, G2 = rng.standard_normal((2, 4, 4)) + 1j * rng.standard_normal((2, 4, 4))
    A = project_hermitian(G1 @ G1.conj().T + np.eye(4))
    B = project_hermitian(G2 @ G2.conj().T + np.eye(4))
    G = init_geometric_mean(A, B)
    assert is_hermitian(G) and min_eigenvalue(G) > 0
    # G A^{-1} G = B characterizes the geometric mean
    assert np.allclose(G @ np.linalg.solve(A, G), B, atol=1e-10 * np.linalg.norm(B))
    assert np.allclose(init_geometric_mean(B, A), G)


def test_shifted_riccati_examples(scalar_c):
    X0 = init_shifted_riccati(scalar_c, 0.1)
    assert min_eigenvalue(lmi_matrix(scalar_c, X0)) > 0
    pair = solve_extremal(scalar_c)
    tiny = init_shifted_riccati(scalar_c, 1e-8)
    assert np.isclose(tiny[0, 0], 0.5 * (pair.x_min + pair.x_max)[0, 0], rtol=1e-6)
    with pytest.raises(XiTooLargeError):
        init_shifted_riccati(scalar_c, 1.0)


@pytest.mark.parametrize("domain", DOMAINS)
def test_shifted_riccati_interior(domain):
    M = random_passive_model(5, 2, 1, domain)
    W = lmi_matrix(M, np.eye(5))
    xi = min_eigenvalue(W) / 4.0
    X0 = init_shifted_riccati(M, xi)
    assert min_eigenvalue(lmi_matrix(M, X0)) > 0


@pytest.mark.parametrize("init", ["geometric_mean", "shifted_riccati", "identity"])
@pytest.mark.parametrize("domain", DOMAINS)
def test_all_inits_converge_to_same_center(init, domain):
    M = random_passive_model(4, 2, 3, domain)
    ref = compute_analytic_center(M).x_center
    r = compute_analytic_center(M, CenterOptions(init=init))
    assert r.converged and r.init_used
    assert np.linalg.norm(r.x_center - ref) <= 1e-7 * np.linalg.norm(ref)


def test_given_start(scalar_c):
    r = compute_analytic_center(scalar_c, x0=np.array([[3.0]]))
    assert r.init_used == "given" and np.isclose(r.x_center[0, 0], 5.0)


# ------------------------------------------------------------ Newton step


def test_newton_at_center(scalar_c):
    D, lam = newton_direction(scalar_c, np.array([[5.0]]))
    assert abs(D[0, 0]) <= 1e-12 and lam <= 1e-24


@pytest.mark.parametrize("x", [2.0, 3.5, 7.0])
def test_newton_scalar_formula(scalar_c, x):
    sys = newton_system(scalar_c, np.array([[x]]))
    a, q = sys.A_hat[0, 0], sys.Q_hat[0, 0]
    D_hat = np.linalg.solve(sys.operator().matrix, [sys.rhs[0, 0]])[0]
    assert np.isclose(D_hat, -2 * a / (4 * a * a + 2 * q))
    D, lam = newton_direction(scalar_c, np.array([[x]]))
    assert np.isclose(D[0, 0], sys.T[0, 0] ** 2 * D_hat)
    assert np.isclose(lam, D_hat * -2 * a)
    assert np.sign(D[0, 0]) == np.sign(5.0 - x)


def _hatted_fd(M, X, sys, h=1e-6):
    """Hatted gradient and Hessian of ln det W(X + T Y T) by finite differences."""
    f = lambda Y: logdet_direct(M, X + sys.T @ Y @ sys.T)  # noqa: E731
    return f


@pytest.mark.parametrize("domain", DOMAINS)
@pytest.mark.parametrize("cplx", [False, True])
def test_newton_system_against_fd(domain, cplx):
    rng = np.random.default_rng(4)
    M = random_passive_model(4, 2, 8, domain, complex_data=cplx)
    X = random_feasible_X(M, rng)
    sys = newton_system(M, X)
    f = _hatted_fd(M, X, sys)
    D, E = random_hermitian(rng, 4, cplx), random_hermitian(rng, 4, cplx)
    h = 1e-5
    grad_fd = (f(h * D) - f(-h * D)) / (2 * h)
    assert np.isclose(grad_fd, frobenius_real_inner(sys.rhs, D), rtol=1e-6)
    h = 1e-4
    mixed = (f(h * D + h * E) - f(h * D - h * E) - f(-h * D + h * E) + f(-h * D - h * E)) / (4 * h * h)
    assert np.isclose(-mixed, frobenius_real_inner(sys.hessian_apply(D), E), rtol=1e-4)
    assert np.isclose(sys.hessian_form(D), frobenius_real_inner(sys.hessian_apply(D), D))


@pytest.mark.parametrize("domain", DOMAINS)
@pytest.mark.parametrize("seed", range(5))
def test_newton_operator_reproduces_rhs(domain, seed):
    rng = np.random.default_rng(seed)
    M = random_passive_model(5, 2, seed, domain, complex_data=seed % 2 == 0)
    X = random_feasible_X(M, rng)
    sys = newton_system(M, X)
    D_X, lam = newton_direction(M, X)
    D_hat = sys.to_hat(D_X)
    assert np.linalg.norm(sys.hessian_apply(D_hat) - sys.rhs) <= 1e-10 * np.linalg.norm(sys.rhs)
    assert np.linalg.norm(sys.operator()(D_hat) - sys.rhs) <= 1e-10 * np.linalg.norm(sys.rhs)
    assert np.isclose(lam, frobenius_real_inner(D_hat, sys.rhs))
    assert lam > 0


# ------------------------------------------------------------ line search and ascent


def test_alpha_at_center(scalar_c):
    sys = newton_system(scalar_c, np.array([[5.0]]))
    assert abs(line_search_newton_alpha(scalar_c, np.array([[5.0]]), np.ones((1, 1)), system=sys)) <= 1e-12


def test_alpha_scalar_plugin(scalar_c):
    X = np.array([[3.0]])
    sys = newton_system(scalar_c, X)
    a, q = sys.A_hat[0, 0], sys.Q_hat[0, 0]
    alpha = line_search_newton_alpha(scalar_c, X, np.ones((1, 1)))
    assert np.isclose(alpha, -2 * a / (4 * a * a + 2 * q))


@pytest.mark.parametrize("domain", DOMAINS)
def test_alpha_is_newton_step_of_1d_function(domain):
    rng = np.random.default_rng(9)
    M = random_passive_model(4, 2, 2, domain)
    X = random_feasible_X(M, rng)
    sys = newton_system(M, X)
    D = random_hermitian(rng, 4)
    D *= np.sign(frobenius_real_inner(sys.rhs, D)) / np.linalg.norm(D)
    phi = lambda t: logdet_direct(M, X + t * sys.T @ D @ sys.T)  # noqa: E731
    h = 1e-4
    d1 = (phi(h) - phi(-h)) / (2 * h)
    d2 = (phi(h) - 2 * phi(0) + phi(-h)) / h**2
    assert np.isclose(line_search_newton_alpha(M, X, D), -d1 / d2, rtol=1e-5)


@pytest.mark.parametrize("metric", ["euclidean", "local"])
def test_ascent_step(scalar_c, metric):
    D, alpha = steepest_ascent_step(scalar_c, np.array([[4.0]]), metric=metric)
    assert alpha * D[0, 0] > 0
    D, alpha = steepest_ascent_step(scalar_c, np.array([[5.0]]), metric=metric)
    assert abs(D[0, 0] * alpha) <= 1e-12
    M = random_passive_model(5, 2, 0)
    X = random_feasible_X(M, np.random.default_rng(1))
    D, alpha = steepest_ascent_step(M, X, metric=metric)
    assert barrier(M, X + alpha * D) < barrier(M, X)
    if metric == "euclidean":
        assert np.isclose(np.linalg.norm(D), 1.0)


# ------------------------------------------------------------ driver


@pytest.mark.parametrize("domain", DOMAINS)
@pytest.mark.parametrize("seed", range(5))
def test_driver_properties(domain, seed):
    M = random_passive_model(3 + seed, 1 + seed % 3, seed, domain, complex_data=seed == 4)
    seen = []
    r = compute_analytic_center(M, callback=seen.append)
    assert r.converged and seen == r.iterations
    X = r.x_center
    assert is_hermitian(X)
    assert stationarity_residual(M, X) <= 1e-8 * (1 + np.linalg.norm(X))
    assert_monotone(M, r)
    assert_quadratic_tail(r)
    pair = r.extremal
    assert min_eigenvalue(X - pair.x_min) >= -1e-8
    assert min_eigenvalue(pair.x_max - X) >= -1e-8
    assert np.isclose(r.barrier_value, barrier(M, X))


@pytest.mark.parametrize("domain", DOMAINS)
def test_methods_agree(domain):
    M = random_passive_model(3, 1, 5, domain)
    rn = compute_analytic_center(M, CenterOptions(tol_residual=1e-12))
    ra = compute_analytic_center(M, CenterOptions(method="ascent", tol_residual=1e-12))
    assert ra.converged
    assert np.linalg.norm(ra.x_center - rn.x_center) <= 1e-6 * np.linalg.norm(rn.x_center)
    assert np.all(np.isnan(ra.decrements))
    assert_monotone(M, ra)


def test_weighted_center_is_stationary():
    rng = np.random.default_rng(2)
    M = random_passive_model(4, 2, 1)
    Q = random_hermitian(rng, 4)
    w = GeneralizedWeight(0.1 * Q @ Q, M.C, M.R)
    r = compute_analytic_center(M, weight=w)
    assert r.converged
    assert stationarity_residual(M, r.x_center, w) <= 1e-8 * (1 + np.linalg.norm(r.x_center))


def test_not_converged_is_reported(scalar_c):
    r = compute_analytic_center(scalar_c, CenterOptions(max_iter=0, init="identity"))
    assert not r.converged and r.n_iter == 0 and "limit" in r.message


def test_not_strictly_passive():
    with pytest.raises(NotStrictlyPassiveError):
        compute_analytic_center(StateSpaceModel(-1.0, 1.0, 1.0, -2.0))
    with pytest.raises(NotStrictlyPassiveError):
        compute_analytic_center(StateSpaceModel(1.0, 1.0, 1.0, 2.0))
    with pytest.raises(NotStrictlyPassiveError):
        compute_analytic_center(StateSpaceModel(-1.0, 1.0, -1.0, 1.0))


@pytest.mark.parametrize(
    "kw",
    [dict(method="bfgs"), dict(tol_residual=0.0), dict(damping_threshold=1.0), dict(init="random"), dict(xi=-1.0), dict(max_iter=-1)],
)
def test_options_validation(kw):
    with pytest.raises(ValueError):
        CenterOptions(**kw)


# ------------------------------------------------------------ spectrum


def test_spectrum_scalar(scalar_c, scalar_d):
    rep = verify_center_spectrum(scalar_c, np.array([[5.0]]))
    assert rep["spectrum_ok"] and abs(rep["eigenvalues"][0]) <= 1e-12
    F = (1 - 5.0) / 4.0
    assert np.isclose(eval_W(scalar_c, np.array([[5.0]])).A_F[0, 0], -1 - F)
    rep = verify_center_spectrum(scalar_d, np.array([[0.875]]))
    assert rep["spectrum_ok"] and rep["spectral_radius"] < 1


@pytest.mark.parametrize("seed", range(3))
def test_spectrum_rejects_extremal(seed):
    M = random_passive_model(4, 2, seed)
    pair = solve_extremal(M)
    for X in (pair.x_min, pair.x_max):
        assert not verify_center_spectrum(M, X)["spectrum_ok"]
    assert verify_center_spectrum(M, compute_analytic_center(M).x_center)["spectrum_ok"]
