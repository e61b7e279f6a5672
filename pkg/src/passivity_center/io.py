"""JSON model files.

Schema (all keys lower case)::

    {
      "time_domain": "continuous" | "discrete",
      "n": int, "m": int,
      "A": [[...]], "B": [[...]], "C": [[...]], "D": [[...]],
      "weight": {"Q": [[...]], "Cw": [[...]], "R": [[...]]},   # optional
      "X": [[...]]                                             # optional
    }

Matrices are lists of rows. An entry is a number or, for complex data, a
two-element list ``[re, im]``. Floats are written with Python's shortest
round-trip representation, so ``write_model`` followed by ``read_model``
reproduces every finite double exactly.
"""
import json
import math

import numpy as np

from .errors import ModelFileError
from .model import TIME_DOMAINS, GeneralizedWeight, ModelError, StateSpaceModel

__all__ = ["read_model", "write_model", "model_to_dict", "model_from_dict", "encode_matrix", "decode_matrix", "dumps"]


def encode_matrix(M):
    M = np.atleast_2d(np.asarray(M))
    if np.iscomplexobj(M):
        return [[[float(v.real), float(v.imag)] for v in row] for row in M]
    return [[float(v) for v in row] for row in M]


def _entry(v, field):
    if isinstance(v, bool):
        raise ModelFileError(f"{field}: boolean entry", field)
    if isinstance(v, (int, float)):
        if not math.isfinite(v):
            raise ModelFileError(f"{field}: non-finite entry", field)
        return float(v), False
    if isinstance(v, (list, tuple)) and len(v) == 2 and all(
        isinstance(p, (int, float)) and not isinstance(p, bool) for p in v
    ):
        if not all(math.isfinite(p) for p in v):
            raise ModelFileError(f"{field}: non-finite entry", field)
        return complex(float(v[0]), float(v[1])), True
    raise ModelFileError(f"{field}: entries must be numbers or [re, im] pairs", field)


def decode_matrix(data, field, shape=None):
    if not isinstance(data, list) or not data or not all(isinstance(r, list) for r in data):
        raise ModelFileError(f"{field}: expected a non-empty list of rows", field)
    width = len(data[0])
    if width == 0 or any(len(r) != width for r in data):
        raise ModelFileError(f"{field}: rows must be non-empty and of equal length", field)
    entries = [[_entry(v, field) for v in row] for row in data]
    is_complex = any(c for row in entries for _, c in row)
    M = np.array([[v for v, _ in row] for row in entries], dtype=complex if is_complex else float)
    if shape is not None and M.shape != tuple(shape):
        raise ModelFileError(f"{field}: shape {M.shape}, expected {tuple(shape)}", field)
    return M


def model_to_dict(M, weight=None, X=None):
    doc = {
        "time_domain": M.time_domain,
        "n": M.n,
        "m": M.m,
        "A": encode_matrix(M.A),
        "B": encode_matrix(M.B),
        "C": encode_matrix(M.C),
        "D": encode_matrix(M.D),
    }
    if weight is not None:
        doc["weight"] = {"Q": encode_matrix(weight.Q), "Cw": encode_matrix(weight.Cw), "R": encode_matrix(weight.R)}
    if X is not None:
        doc["X"] = encode_matrix(X)
    return doc


def _int_field(doc, key):
    v = doc.get(key)
    if isinstance(v, bool) or not isinstance(v, int) or v < 1:
        raise ModelFileError(f"{key}: expected a positive integer", key)
    return v


def model_from_dict(doc):
    """Inverse of :func:`model_to_dict`; returns ``(model, weight or None, X or None)``."""
    if not isinstance(doc, dict):
        raise ModelFileError("top level: expected an object", "top level")
    td = doc.get("time_domain")
    if td not in TIME_DOMAINS:
        raise ModelFileError(f"time_domain: expected one of {TIME_DOMAINS}", "time_domain")
    n, m = _int_field(doc, "n"), _int_field(doc, "m")
    shapes = {"A": (n, n), "B": (n, m), "C": (m, n), "D": (m, m)}
    mats = {}
    for key, shape in shapes.items():
        if key not in doc:
            raise ModelFileError(f"{key}: missing", key)
        mats[key] = decode_matrix(doc[key], key, shape)
    try:
        model = StateSpaceModel(time_domain=td, **mats)
    except ModelError as exc:
        raise ModelFileError(f"model: {exc}", "model") from exc
    weight = None
    if doc.get("weight") is not None:
        w = doc["weight"]
        if not isinstance(w, dict):
            raise ModelFileError("weight: expected an object", "weight")
        parts = {}
        for key, shape in (("Q", (n, n)), ("Cw", (m, n)), ("R", (m, m))):
            if key not in w:
                raise ModelFileError(f"weight.{key}: missing", f"weight.{key}")
            parts[key] = decode_matrix(w[key], f"weight.{key}", shape)
        try:
            weight = GeneralizedWeight(**parts)
        except ModelError as exc:
            raise ModelFileError(f"weight: {exc}", "weight") from exc
    X = None
    if doc.get("X") is not None:
        X = decode_matrix(doc["X"], "X", (n, n))
        if np.max(np.abs(X - X.conj().T)) > 1e-12 * max(1.0, np.abs(X).max()):
            raise ModelFileError("X: must be Hermitian", "X")
    return model, weight, X


def dumps(doc):
    return json.dumps(doc, indent=1, allow_nan=False) + "\n"


def read_model(path):
    """Read a model file; returns ``(model, weight or None, X or None)``.

    Raises
    ------
    ModelFileError
        On I/O, JSON or schema errors; ``field`` names the offending key.
    """
    try:
        with open(path, encoding="utf-8") as fh:
            doc = json.load(fh, parse_constant=_reject_constant)
    except OSError as exc:
        raise ModelFileError(f"cannot read {path}: {exc}", "file") from exc
    except json.JSONDecodeError as exc:
        raise ModelFileError(f"invalid JSON in {path}: {exc}", "file") from exc
    return model_from_dict(doc)


def _reject_constant(name):
    raise ModelFileError(f"non-finite constant {name} is not allowed", "entry")


def write_model(path, M, weight=None, X=None):
    text = dumps(model_to_dict(M, weight, X))
    with open(path, "w", encoding="utf-8") as fh:
        fh.write(text)
