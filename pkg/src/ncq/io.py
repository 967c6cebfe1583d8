"""JSON formats for groups, duals, symbols, operators, dynamical systems and algebras.

Complex numbers are written as ``[re, im]`` pairs. Fields are keyed by
irrep label; symbols by element (or Ω point) index and then irrep label.
"""

from __future__ import annotations

import json
from pathlib import Path

import numpy as np

from .crossed import DynamicalSystem
from .groups import FiniteGroup, UnitaryDual, UnitaryIrrep, sorted_dual
from .nilpotent import Grid, NilpotentAlgebra, ScalarSymbol


class InputError(ValueError):
    """Malformed or inconsistent input data."""


def encode(M) -> list:
    M = np.asarray(M, dtype=complex)
    return np.stack([M.real, M.imag], axis=-1).tolist()


def decode(data) -> np.ndarray:
    arr = np.asarray(data, dtype=float)
    if arr.ndim == 0 or arr.shape[-1] != 2:
        raise InputError("complex entries must be [re, im] pairs")
    return arr[..., 0] + 1j * arr[..., 1]


def dumps(obj) -> str:
    return json.dumps(obj, indent=1) + "\n"


def write_json(path, obj) -> None:
    Path(path).write_text(dumps(obj))


def read_json(path) -> dict:
    try:
        return json.loads(Path(path).read_text())
    except FileNotFoundError:
        raise InputError(f"file not found: {path}") from None
    except json.JSONDecodeError as exc:
        raise InputError(f"{path}: invalid JSON ({exc.msg} at line {exc.lineno})") from None


def _require(d: dict, *keys):
    if not isinstance(d, dict):
        raise InputError("expected a JSON object")
    missing = [k for k in keys if k not in d]
    if missing:
        raise InputError(f"missing keys: {missing}")


# -- groups ---------------------------------------------------------------------------

def group_to_json(G: FiniteGroup) -> dict:
    return {"order": G.order, "mul": G.mul.tolist(), "labels": list(G.labels)}


def group_from_json(d: dict) -> FiniteGroup:
    _require(d, "order", "mul")
    n = int(d["order"])
    mul = np.asarray(d["mul"])
    if mul.shape != (n, n):
        raise InputError(f"mul table must be {n}x{n}")
    labels = tuple(d.get("labels") or [str(i) for i in range(n)])
    if len(labels) != n:
        raise InputError("labels must have one entry per element")
    return FiniteGroup(mul, labels)


def dual_to_json(D: UnitaryDual) -> dict:
    return {"irreps": [{"label": r.label, "dim": r.dim, "matrices": encode(r.matrices)} for r in D]}


def dual_from_json(d: dict) -> UnitaryDual:
    _require(d, "irreps")
    irreps = []
    for item in d["irreps"]:
        _require(item, "label", "dim", "matrices")
        mats = decode(item["matrices"])
        if mats.ndim != 3 or mats.shape[1:] != (item["dim"], item["dim"]):
            raise InputError(f"irrep {item['label']!r}: matrices do not match dim")
        irreps.append(UnitaryIrrep(str(item["label"]), mats))
    if not irreps:
        raise InputError("dual has no irreps")
    return sorted_dual(irreps)


# -- symbols and operators -----------------------------------------------------------------

def field_to_json(D: UnitaryDual, phi) -> dict:
    return {"field": {r.label: encode(f) for r, f in zip(D, phi)}}


def field_from_json(D: UnitaryDual, d: dict) -> list:
    _require(d, "field")
    try:
        out = [decode(d["field"][r.label]) for r in D]
    except KeyError as exc:
        raise InputError(f"field is missing irrep {exc.args[0]!r}") from None
    for f, dim in zip(out, D.dims):
        if f.shape != (dim, dim):
            raise InputError("field matrix has the wrong size")
    return out


def symbol_to_json(D: UnitaryDual, a, size_key: str = "order") -> dict:
    """Symbol on G x Ĝ (``size_key="order"``) or on Ω x Ĝ (``size_key="omega"``)."""
    n = a[0].shape[0]
    body = {str(x): {r.label: encode(ak[x]) for r, ak in zip(D, a)} for x in range(n)}
    return {size_key: n, "symbol": body}


def symbol_from_json(D: UnitaryDual, d: dict, size: int | None = None) -> list:
    _require(d, "symbol")
    body = d["symbol"]
    if size is None:
        size = int(d.get("order", d.get("omega", len(body))))
    out = [np.zeros((size, dim, dim), dtype=complex) for dim in D.dims]
    for x in range(size):
        entry = body.get(str(x))
        if entry is None:
            raise InputError(f"symbol is missing index {x}")
        for k, r in enumerate(D):
            if r.label not in entry:
                raise InputError(f"symbol[{x}] is missing irrep {r.label!r}")
            m = decode(entry[r.label])
            if m.shape != (r.dim, r.dim):
                raise InputError(f"symbol[{x}][{r.label}] has shape {m.shape}, expected {(r.dim, r.dim)}")
            out[k][x] = m
    return out


def operator_to_json(T, metrics: dict | None = None) -> dict:
    T = np.asarray(T)
    out = {"order": T.shape[0], "matrix": encode(T)}
    if metrics is not None:
        out["metrics"] = metrics
    return out


def operator_from_json(d: dict) -> np.ndarray:
    _require(d, "matrix")
    return decode(d["matrix"])


# -- dynamical systems -------------------------------------------------------------------

def system_to_json(S: DynamicalSystem) -> dict:
    return {"omega": S.omega_size, "action": {str(x): row.tolist() for x, row in enumerate(S.action)}}


def system_from_json(G: FiniteGroup, d: dict) -> DynamicalSystem:
    _require(d, "omega", "action")
    try:
        rows = [d["action"][str(x)] for x in range(G.order)]
    except KeyError as exc:
        raise InputError(f"action is missing element {exc.args[0]}") from None
    S = DynamicalSystem(np.asarray(rows))
    if S.omega_size != int(d["omega"]):
        raise InputError("omega size does not match the action rows")
    try:
        S.validate(G)
    except ValueError as exc:
        raise InputError(str(exc)) from None
    return S


# -- nilpotent side ------------------------------------------------------------------------

def algebra_to_json(alg: NilpotentAlgebra) -> dict:
    n = alg.dim
    brackets = [
        {"i": i, "j": j, "coeffs": alg.structure[i, j].tolist()}
        for i in range(n)
        for j in range(i + 1, n)
        if np.any(alg.structure[i, j])
    ]
    return {"dim": n, "step": alg.step, "brackets": brackets}


def algebra_from_json(d: dict) -> NilpotentAlgebra:
    _require(d, "dim", "brackets")
    n = int(d["dim"])
    c = np.zeros((n, n, n))
    for b in d["brackets"]:
        i, j, coeffs = int(b["i"]), int(b["j"]), np.asarray(b["coeffs"], dtype=float)
        if coeffs.shape != (n,):
            raise InputError("bracket coefficients must have length dim")
        c[i, j] += coeffs
        c[j, i] -= coeffs
    try:
        alg = NilpotentAlgebra(c)
    except ValueError as exc:
        raise InputError(str(exc)) from None
    if "step" in d and int(d["step"]) != alg.step:
        raise InputError(f"declared step {d['step']} but structure constants give {alg.step}")
    return alg


def grid_to_json(g: Grid) -> dict:
    return {"dim": g.dim, "half_width": g.half_width, "points": g.points}


def grid_from_json(d: dict) -> Grid:
    _require(d, "dim", "half_width", "points")
    try:
        return Grid(int(d["dim"]), float(d["half_width"]), int(d["points"]))
    except ValueError as exc:
        raise InputError(str(exc)) from None


def scalar_symbol_to_json(s: ScalarSymbol) -> dict:
    return {"grid": grid_to_json(s.grid), "values": encode(s.sampled())}


def scalar_symbol_from_json(d: dict) -> ScalarSymbol:
    _require(d, "grid", "values")
    g = grid_from_json(d["grid"])
    try:
        return ScalarSymbol(g, values=decode(d["values"]))
    except ValueError as exc:
        raise InputError(str(exc)) from None
