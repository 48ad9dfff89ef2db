"""JSON ingestion and emission for state descriptions.

The single ingestion schema (complex numbers as [re, im] pairs):

    { "kind": "circulant"|"bell"|"werner"|"isotropic"|"orthogonal"
              |"commuting"|"dense",
      "d": int,
      "a": [ d matrices, each d×d of [re, im] ],   # circulant
      "p": [[real]],                               # bell weights
      "lambda": real,                              # werner / isotropic
      "abc": [real, real, real],                   # orthogonal
      "a0": [[[re, im]]], "dmat": [[real]],        # commuting
      "rho": [[[re, im]]] }                        # dense d²×d²

Unknown fields are rejected; numbers are parsed as 64-bit floats.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field

import numpy as np

from .errors import InvalidSpec
from .states import (
    BellWeights,
    CirculantSpec,
    bell_diagonal_state,
    circulant_state,
    commuting_group_invariant_state,
    isotropic_state,
    orthogonal_invariant_state,
    validate_bell_weights,
    werner_state,
)
from .linalg import check_density_matrix

_KIND_FIELDS = {
    "circulant": {"a"},
    "bell": {"p"},
    "werner": {"lambda"},
    "isotropic": {"lambda"},
    "orthogonal": {"abc"},
    "commuting": {"a0", "dmat"},
    "dense": {"rho"},
}


@dataclass
class LoadedState:
    """A parsed state: always a dense matrix, plus structure when available."""

    kind: str
    d: int
    rho: np.ndarray
    spec: CirculantSpec | None = None
    weights: BellWeights | None = None
    params: dict = field(default_factory=dict)


def encode_complex_matrix(M: np.ndarray) -> list:
    M = np.asarray(M, dtype=complex)
    return [[[float(z.real), float(z.imag)] for z in row] for row in M]


def decode_complex_matrix(obj, shape: tuple[int, int], name: str) -> np.ndarray:
    try:
        arr = np.asarray(obj, dtype=float)
    except (TypeError, ValueError) as exc:
        raise InvalidSpec(f"field {name!r} is not a complex matrix: {exc}") from None
    if arr.shape != (*shape, 2):
        raise InvalidSpec(
            f"field {name!r} must have shape {shape} of [re, im] pairs, got {arr.shape}"
        )
    return arr[..., 0] + 1j * arr[..., 1]


def decode_real_matrix(obj, shape: tuple[int, int], name: str) -> np.ndarray:
    try:
        arr = np.asarray(obj, dtype=float)
    except (TypeError, ValueError) as exc:
        raise InvalidSpec(f"field {name!r} is not a real matrix: {exc}") from None
    if arr.shape != shape:
        raise InvalidSpec(f"field {name!r} must have shape {shape}, got {arr.shape}")
    return arr


def circulant_to_json(spec: CirculantSpec) -> dict:
    return {
        "kind": "circulant",
        "d": spec.d,
        "a": [encode_complex_matrix(m) for m in spec.a],
    }


def dense_to_json(rho: np.ndarray, d: int) -> dict:
    return {"kind": "dense", "d": d, "rho": encode_complex_matrix(rho)}


def bell_to_json(d: int, p: np.ndarray) -> dict:
    return {"kind": "bell", "d": d, "p": [[float(x) for x in row] for row in p]}


def parse_state(obj: dict, validate: bool = True) -> LoadedState:
    """Build a :class:`LoadedState` from a schema dict.

    With ``validate`` (the default) the resulting state must satisfy its
    family invariants (PSD, trace, weight constraints); schema violations
    raise :class:`InvalidSpec` either way.
    """
    if not isinstance(obj, dict):
        raise InvalidSpec(f"state description must be an object, got {type(obj).__name__}")
    kind = obj.get("kind")
    if kind not in _KIND_FIELDS:
        raise InvalidSpec(f"unknown kind {kind!r}; expected one of {sorted(_KIND_FIELDS)}")
    allowed = {"kind", "d"} | _KIND_FIELDS[kind]
    unknown = set(obj) - allowed
    if unknown:
        raise InvalidSpec(f"unknown fields {sorted(unknown)} for kind {kind!r}")
    missing = allowed - set(obj)
    if missing:
        raise InvalidSpec(f"missing fields {sorted(missing)} for kind {kind!r}")
    d = obj["d"]
    if not isinstance(d, int) or isinstance(d, bool) or d < 2:
        raise InvalidSpec(f"'d' must be an integer ≥ 2, got {d!r}")

    if kind == "circulant":
        a_obj = obj["a"]
        if not isinstance(a_obj, list) or len(a_obj) != d:
            raise InvalidSpec(f"'a' must be a list of {d} matrices")
        mats = tuple(
            decode_complex_matrix(m, (d, d), f"a[{n}]") for n, m in enumerate(a_obj)
        )
        spec = CirculantSpec(d, mats)
        rho = circulant_state(spec, validate=validate)
        return LoadedState("circulant", d, rho, spec=spec)

    if kind == "bell":
        p = decode_real_matrix(obj["p"], (d, d), "p")
        w = BellWeights(d, p)
        validate_bell_weights(w)
        spec = bell_diagonal_state(w)
        rho = circulant_state(spec, validate=False)
        return LoadedState("bell", d, rho, spec=spec, weights=w)

    if kind in ("werner", "isotropic"):
        lam = obj["lambda"]
        if isinstance(lam, bool) or not isinstance(lam, (int, float)):
            raise InvalidSpec(f"'lambda' must be a number, got {lam!r}")
        build = werner_state if kind == "werner" else isotropic_state
        spec = build(d, float(lam), validate=validate)
        rho = circulant_state(spec, validate=False)
        return LoadedState(kind, d, rho, spec=spec, params={"lambda": float(lam)})

    if kind == "orthogonal":
        abc = obj["abc"]
        if not isinstance(abc, list) or len(abc) != 3:
            raise InvalidSpec("'abc' must be a list of three numbers")
        rho = orthogonal_invariant_state([float(x) for x in abc], d)
        return LoadedState("orthogonal", d, rho, params={"abc": [float(x) for x in abc]})

    if kind == "commuting":
        a0 = decode_complex_matrix(obj["a0"], (d, d), "a0")
        dmat = decode_real_matrix(obj["dmat"], (d, d), "dmat")
        spec = commuting_group_invariant_state(a0, dmat)
        rho = circulant_state(spec, validate=False)
        return LoadedState("commuting", d, rho, spec=spec)

    # dense
    rho = decode_complex_matrix(obj["rho"], (d * d, d * d), "rho")
    if validate:
        check_density_matrix(rho)
    return LoadedState("dense", d, rho)


def load_state_file(path: str, validate: bool = True) -> LoadedState:
    """Parse a state JSON file."""
    with open(path, "r", encoding="utf-8") as fh:
        try:
            obj = json.load(fh)
        except json.JSONDecodeError as exc:
            raise InvalidSpec(f"{path}: not valid JSON ({exc})") from None
    return parse_state(obj, validate=validate)
