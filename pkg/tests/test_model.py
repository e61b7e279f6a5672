import numpy as np
import pytest

from passivity_center.errors import PoleError
from passivity_center.hermitian import is_hermitian, min_eigenvalue
from passivity_center.lmi import lmi_matrix
from passivity_center.model import (
    GeneralizedWeight,
    ModelError,
    StateSpaceModel,
    is_minimal,
    popov_at_infinity,
    popov_eval,
    random_passive_model,
    system_pencil_eval,
)


def test_minimality_examples():
    assert tuple(is_minimal(StateSpaceModel(0.0, 1.0, 1.0, 1.0))) == (True, True)
    M = StateSpaceModel(np.diag([1.0, 2.0]), [[1.0], [0.0]], [[1.0, 0.0]], 1.0)
    assert tuple(is_minimal(M)) == (False, False)
    M = StateSpaceModel([[0.0, 1.0], [0.0, 0.0]], [[0.0], [1.0]], [[1.0, 0.0]], 1.0)
    assert tuple(is_minimal(M)) == (True, True)


def test_construction_errors():
    with pytest.raises(ModelError):
        StateSpaceModel(np.eye(2), np.ones((2, 1)), np.ones((1, 3)), 1.0)
    with pytest.raises(ModelError):
        StateSpaceModel(np.eye(2), np.zeros((2, 1)), np.ones((1, 2)), 1.0)
    with pytest.raises(ModelError):
        StateSpaceModel(-1.0, 1.0, 1.0, 0.0)
    with pytest.raises(ModelError):
        StateSpaceModel(-1.0, 1.0, 1.0, 1.0, "hybrid")
    with pytest.raises(ModelError):
        GeneralizedWeight(np.array([[0.0, 1.0], [0.0, 0.0]]), np.ones((1, 2)), 1.0)


def test_popov_examples(scalar_c, scalar_d):
    assert np.isclose(popov_eval(scalar_c, 0.0)[0, 0], 6.0)
    assert np.isclose(popov_at_infinity(scalar_c)[0, 0], 4.0)
    assert np.isclose(popov_eval(scalar_c, 1e8)[0, 0], 4.0)
    assert np.isclose(popov_eval(scalar_d, 0.0)[0, 0], 3.0)
    w = 0.7
    assert np.isclose(popov_eval(scalar_c, w)[0, 0], 4 - 2 * (-1) / (1 + w * w))


def test_popov_pole():
    with pytest.raises(PoleError):
        popov_eval(StateSpaceModel(np.array([[0.0, 1.0], [-1.0, 0.0]]), [[0.0], [1.0]], [[1.0, 0.0]], 1.0), 1.0)


def test_pencil_examples(scalar_c, scalar_d):
    assert np.allclose(system_pencil_eval(scalar_c, 0.0), [[0, -1, 1], [-1, 0, 1], [1, 1, 4]])
    assert np.allclose(system_pencil_eval(scalar_d, 1.0), [[0, -0.5, 1], [-0.5, 0, 0.25], [1, 0.25, 2]])


@pytest.mark.parametrize("domain", ["continuous", "discrete"])
@pytest.mark.parametrize("cplx", [False, True])
def test_pencil_schur_complement_is_popov(domain, cplx):
    M = random_passive_model(4, 2, 3, domain, complex_data=cplx)
    rng = np.random.default_rng(0)
    n = M.n
    for w in rng.uniform(-3, 3, 5):
        point = 1j * w if domain == "continuous" else np.exp(1j * w)
        S = system_pencil_eval(M, point)
        k = 2 * n
        schur = S[k:, k:] - S[k:, :k] @ np.linalg.solve(S[:k, :k], S[:k, k:])
        Phi = popov_eval(M, w)
        assert np.linalg.norm(schur - Phi) <= 1e-10 * np.linalg.norm(Phi)


@pytest.mark.parametrize("domain", ["continuous", "discrete"])
def test_popov_hermitian_pd(domain):
    M = random_passive_model(5, 2, 11, domain, complex_data=True)
    for w in np.random.default_rng(1).uniform(-10, 10, 20):
        Phi = popov_eval(M, w)
        assert is_hermitian(Phi)
        assert min_eigenvalue(Phi) > 0


@pytest.mark.parametrize("domain", ["continuous", "discrete"])
@pytest.mark.parametrize("seed", range(5))
def test_generator(domain, seed):
    M = random_passive_model(6, 3, seed, domain)
    assert is_minimal(M)
    assert min_eigenvalue(lmi_matrix(M, np.eye(6))) > 0
    M2 = random_passive_model(6, 3, seed, domain)
    for a, b in zip((M.A, M.B, M.C, M.D), (M2.A, M2.B, M2.C, M2.D)):
        assert np.array_equal(a, b)
    if domain == "discrete":
        assert max(abs(np.linalg.eigvals(M.A))) < 1


def test_generator_example_scale():
    M = random_passive_model(30, 10, 7)
    assert M.n == 30 and M.m == 10
    assert min_eigenvalue(lmi_matrix(M, np.eye(30))) > 0
