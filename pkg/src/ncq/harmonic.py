"""Fourier analysis on a finite group with an explicit unitary dual.

Data layouts
------------
GroupFunction
    complex vector of length ``n``.
FourierField
    list over irreps of ``(d, d)`` matrices.
Symbol (mixed field)
    list over irreps of ``(n, d, d)`` arrays. Entry ``k`` holds the
    matrices attached to the k-th irrep, indexed by the group slot. The
    same layout stores symbols ``a(x, xi)`` on G x Ĝ and dual-side symbols
    ``a(xi, x)`` on Ĝ x G.
TwoVarFunction
    complex ``(n, n)`` array ``F[q, x]``.

Conventions: ``fourier(u)(xi) = sum_x u(x) xi(x)^*`` and
``u(x) = sum_xi w_xi Tr[xi(x) phi(xi)]`` with ``w_xi = d_xi / n``.
"""

from __future__ import annotations

import math
from typing import Literal

import numpy as np

from .groups import UnitaryDual

Field = list  # list[np.ndarray], one (d, d) matrix per irrep
MixedField = list  # list[np.ndarray], one (n, d, d) array per irrep


def fourier(D: UnitaryDual, u: np.ndarray) -> Field:
    u = np.asarray(u, dtype=complex)
    if u.shape != (D.group_order,):
        raise ValueError(f"function has shape {u.shape}, expected ({D.group_order},)")
    # xi(x)^* has entries conj(M[x])_{ji}
    return [np.einsum("x,xji->ij", u, r.matrices.conj()) for r in D]


def inverse_fourier(D: UnitaryDual, phi: Field) -> np.ndarray:
    _check_field(D, phi)
    out = np.zeros(D.group_order, dtype=complex)
    for w, r, f in zip(D.weights, D, phi):
        out += w * np.einsum("xij,ji->x", r.matrices, f)
    return out


def partial_fourier(
    D: UnitaryDual,
    data,
    axis: Literal["first", "second"],
    direction: Literal["forward", "inverse"],
):
    """Fourier transform in one slot of a two-variable object.

    ``second/forward`` takes ``F[x, y]`` to the symbol ``a(x, xi)``;
    ``first/forward`` takes ``F[q, x]`` to the dual-side symbol ``a(xi, x)``.
    The inverse directions undo these.
    """
    if axis not in ("first", "second") or direction not in ("forward", "inverse"):
        raise ValueError(f"bad axis/direction: {axis}/{direction}")
    n = D.group_order
    if direction == "forward":
        F = np.asarray(data, dtype=complex)
        if F.shape != (n, n):
            raise ValueError(f"expected ({n}, {n}) function, got {F.shape}")
        spec = "xy,yij->xji" if axis == "second" else "qx,qij->xji"
        return [np.einsum(spec, F, r.matrices.conj()) for r in D]
    _check_mixed(D, data)
    out = np.zeros((n, n), dtype=complex)
    spec = "yij,xji->xy" if axis == "second" else "qij,xji->qx"
    for w, r, a in zip(D.weights, D, data):
        out += w * np.einsum(spec, r.matrices, a)
    return out


def symbol_to_dual_side(D: UnitaryDual, a: MixedField) -> MixedField:
    """(F ⊗ F^-1): a(x, xi) on G x Ĝ to a(xi, y) on Ĝ x G."""
    F = partial_fourier(D, a, "second", "inverse")
    return partial_fourier(D, F, "first", "forward")


def dual_side_to_symbol(D: UnitaryDual, a: MixedField) -> MixedField:
    """(F^-1 ⊗ F): inverse of ``symbol_to_dual_side``."""
    F = partial_fourier(D, a, "first", "inverse")
    return partial_fourier(D, F, "second", "forward")


# -- inner products and norms ------------------------------------------------------

def l2_inner(u: np.ndarray, v: np.ndarray) -> complex:
    """<u, v> = sum u conj(v), linear in the first slot."""
    return complex(np.vdot(v, u))


def field_inner(D: UnitaryDual, f: Field, g: Field) -> complex:
    return complex(sum(w * np.vdot(b, a) for w, a, b in zip(D.weights, f, g)))


def mixed_inner(D: UnitaryDual, a: MixedField, b: MixedField) -> complex:
    return complex(sum(w * np.vdot(y, x) for w, x, y in zip(D.weights, a, b)))


def singular_values(M: np.ndarray) -> np.ndarray:
    """Singular values of a matrix or a stack of matrices (last two axes)."""
    return np.linalg.svd(M, compute_uv=False)


def schatten(M: np.ndarray, p: float) -> np.ndarray:
    """Schatten-p norm of a matrix or of each matrix in a stack."""
    _check_p(p)
    s = singular_values(M)
    if math.isinf(p):
        return s.max(axis=-1) if s.shape[-1] else np.zeros(s.shape[:-1])
    return np.sum(s**p, axis=-1) ** (1.0 / p)


def norm(space: str, obj, D: UnitaryDual | None = None, p: float = 2.0) -> float:
    """Norm of ``obj`` in one of ``L2``, ``B2_dual``, ``B2_gamma``, ``Bp_dual``, ``Bpp_dual_side``.

    ``B2_gamma`` is the Hilbert space of symbols on G x Ĝ; ``Bpp_dual_side``
    is the mixed Schatten space of dual-side symbols on Ĝ x G.
    """
    if space == "L2":
        return float(np.linalg.norm(np.asarray(obj)))
    if D is None:
        raise ValueError(f"space {space} needs a dual")
    w = D.weights
    if space == "B2_dual":
        return math.sqrt(sum(wk * np.sum(np.abs(f) ** 2) for wk, f in zip(w, obj)))
    if space == "B2_gamma":
        return math.sqrt(sum(wk * np.sum(np.abs(a) ** 2) for wk, a in zip(w, obj)))
    if space == "Bp_dual":
        _check_p(p)
        fibers = [float(schatten(f, p)) for f in obj]
        if math.isinf(p):
            return max(fibers, default=0.0)
        return sum(wk * s**p for wk, s in zip(w, fibers)) ** (1.0 / p)
    if space == "Bpp_dual_side":
        _check_p(p)
        fibers = [schatten(a, p) for a in obj]  # each is a vector over x
        if math.isinf(p):
            return float(max((f.max() for f in fibers if f.size), default=0.0))
        return float(sum(wk * np.sum(f**p) for wk, f in zip(w, fibers)) ** (1.0 / p))
    raise ValueError(f"unknown space {space!r}")


# -- random data -----------------------------------------------------------------------

def random_function(n: int, rng: np.random.Generator) -> np.ndarray:
    return rng.standard_normal(n) + 1j * rng.standard_normal(n)


def random_field(D: UnitaryDual, rng: np.random.Generator) -> Field:
    return [rng.standard_normal((d, d)) + 1j * rng.standard_normal((d, d)) for d in D.dims]


def random_symbol(D: UnitaryDual, rng: np.random.Generator, n: int | None = None) -> MixedField:
    n = D.group_order if n is None else n
    return [rng.standard_normal((n, d, d)) + 1j * rng.standard_normal((n, d, d)) for d in D.dims]


def identity_symbol(D: UnitaryDual) -> MixedField:
    n = D.group_order
    return [np.broadcast_to(np.eye(d, dtype=complex), (n, d, d)).copy() for d in D.dims]


def zero_symbol(D: UnitaryDual) -> MixedField:
    n = D.group_order
    return [np.zeros((n, d, d), dtype=complex) for d in D.dims]


def symbol_distance(a: MixedField, b: MixedField) -> float:
    return max((float(np.max(np.abs(x - y))) for x, y in zip(a, b) if x.size), default=0.0)


def _check_p(p: float) -> None:
    if not p >= 1:
        raise ValueError(f"Schatten exponent must be >= 1, got {p}")


def _check_field(D: UnitaryDual, phi: Field) -> None:
    if len(phi) != len(D) or any(np.shape(f) != (d, d) for f, d in zip(phi, D.dims)):
        raise ValueError("field does not match the dual")


def _check_mixed(D: UnitaryDual, a: MixedField) -> None:
    n = D.group_order
    if len(a) != len(D) or any(np.shape(x) != (n, d, d) for x, d in zip(a, D.dims)):
        raise ValueError("symbol does not match the dual")
