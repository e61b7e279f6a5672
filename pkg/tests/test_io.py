import json

import numpy as np
import pytest

from passivity_center.errors import ModelFileError
from passivity_center.io import model_from_dict, model_to_dict, read_model, write_model
from passivity_center.model import GeneralizedWeight, random_passive_model


def _write(path, doc):
    path.write_text(json.dumps(doc))
    return str(path)


def test_minimal_scalar_file(tmp_path):
    p = _write(tmp_path / "m.json", {"time_domain": "continuous", "n": 1, "m": 1, "A": [[-1]], "B": [[1]], "C": [[1]], "D": [[2]]})
    M, w, X = read_model(p)
    assert M.n == M.m == 1 and w is None and X is None
    assert M.A[0, 0] == -1.0


@pytest.mark.parametrize("cplx", [False, True])
def test_round_trip_bit_identical(tmp_path, cplx):
    rng = np.random.default_rng(0)
    M = random_passive_model(4, 2, 5, "discrete", complex_data=cplx)
    X = rng.standard_normal((4, 4)) * 1e-7
    X = X + X.T + np.eye(4) * np.pi
    w = GeneralizedWeight(np.eye(4) / 3, M.C, M.R)
    p = str(tmp_path / "m.json")
    write_model(p, M, w, X)
    M2, w2, X2 = read_model(p)
    for a, b in ((M.A, M2.A), (M.B, M2.B), (M.C, M2.C), (M.D, M2.D), (w.Q, w2.Q), (w.R, w2.R), (X, X2)):
        assert a.dtype == b.dtype and np.array_equal(a, b)
    assert M2.time_domain == "discrete"
    q = str(tmp_path / "m2.json")
    write_model(q, M2, w2, X2)
    assert open(p).read() == open(q).read()


def _base():
    return {"time_domain": "continuous", "n": 1, "m": 1, "A": [[-1]], "B": [[1]], "C": [[1]], "D": [[2]]}


@pytest.mark.parametrize(
    "patch, field",
    [
        ({"time_domain": "hybrid"}, "time_domain"),
        ({"n": 0}, "n"),
        ({"n": True}, "n"),
        ({"A": [[1, 2]]}, "A"),
        ({"B": [["x"]]}, "B"),
        ({"C": []}, "C"),
        ({"D": [[[1, 2, 3]]]}, "D"),
        ({"D": [[0]]}, "model"),
        ({"weight": {"Q": [[0, 1], [0, 0]], "Cw": [[1, 1]], "R": [[1]]}, "n": 2, "A": [[-1, 0], [0, -2]], "B": [[1], [1]], "C": [[1, 2]]}, "weight"),
        ({"weight": {"Q": [[0]], "R": [[1]]}}, "weight.Cw"),
        ({"X": [[1, 2], [3, 4]]}, "X"),
    ],
)
def test_schema_errors(patch, field):
    doc = _base()
    doc.update(patch)
    with pytest.raises(ModelFileError) as exc:
        model_from_dict(doc)
    assert exc.value.field == field


def test_non_hermitian_weight_q_rejected(tmp_path):
    doc = _base()
    doc["weight"] = {"Q": [[[1, 1]]], "Cw": [[1]], "R": [[1]]}
    with pytest.raises(ModelFileError) as exc:
        model_from_dict(doc)
    assert exc.value.field == "weight"


def test_missing_key_and_nan(tmp_path):
    doc = _base()
    del doc["C"]
    with pytest.raises(ModelFileError) as exc:
        model_from_dict(doc)
    assert exc.value.field == "C"
    p = tmp_path / "nan.json"
    p.write_text(json.dumps(_base()).replace("[[2]]", "[[NaN]]"))
    with pytest.raises(ModelFileError):
        read_model(str(p))
    p.write_text("{not json")
    with pytest.raises(ModelFileError):
        read_model(str(p))
    with pytest.raises(ModelFileError):
        read_model(str(tmp_path / "missing.json"))


def test_complex_encoding():
    M = random_passive_model(2, 1, 0, complex_data=True)
    doc = model_to_dict(M)
    assert isinstance(doc["A"][0][0], list) and len(doc["A"][0][0]) == 2
    M2, _, _ = model_from_dict(json.loads(json.dumps(doc)))
    assert np.array_equal(M.A, M2.A)
