"""tau-quantization of operator-valued symbols on a finite group.

Counting measure makes an integral operator equal to its kernel matrix,
so ``op_from_symbol`` returns the kernel itself. Both right (``"R"``)
and left (``"L"``) quantizations are supported.
"""

from __future__ import annotations

from typing import Literal

import numpy as np

from .groups import FiniteGroup, TauMap, UnitaryDual
from .harmonic import (
    MixedField,
    dual_side_to_symbol,
    partial_fourier,
    schatten,
)

Side = Literal["R", "L"]


def _side(side: str) -> str:
    s = str(side).upper()[:1]
    if s not in ("R", "L"):
        raise ValueError(f"side must be R or L, got {side!r}")
    return s


def cv(G: FiniteGroup, tau: TauMap, side: str, direction: str, x, y):
    """Change of variables on G x G and its inverse (vectorized over x, y).

    Right: ``(x, y) -> (x tau(y^-1 x)^-1, y^-1 x)``.
    Left:  ``(x, y) -> (tau(x y^-1)^-1 x, x y^-1)``.
    """
    mul, inv, tau = G.mul, G.inv, np.asarray(tau)
    side = _side(side)
    if direction == "forward":
        if side == "R":
            z = mul[inv[y], x]
            return mul[x, inv[tau[z]]], z
        z = mul[x, inv[y]]
        return mul[inv[tau[z]], x], z
    if direction == "inverse":
        if side == "R":
            p = mul[x, tau[y]]
            return p, mul[p, inv[y]]
        p = mul[tau[y], x]
        return p, mul[inv[y], p]
    raise ValueError(f"direction must be forward or inverse, got {direction!r}")


def apply_cv(G: FiniteGroup, tau: TauMap, side: str, direction: str, F: np.ndarray) -> np.ndarray:
    """Composition ``F ∘ cv`` (forward) or ``F ∘ cv^-1`` (inverse)."""
    n = G.order
    X, Y = np.meshgrid(np.arange(n), np.arange(n), indexing="ij")
    Xp, Yp = cv(G, tau, side, direction, X, Y)
    return np.asarray(F)[Xp, Yp]


def kernel_from_symbol(G: FiniteGroup, D: UnitaryDual, tau: TauMap, a: MixedField, side: str = "R") -> np.ndarray:
    return apply_cv(G, tau, side, "forward", partial_fourier(D, a, "second", "inverse"))


def symbol_from_kernel(G: FiniteGroup, D: UnitaryDual, tau: TauMap, K: np.ndarray, side: str = "R") -> MixedField:
    return partial_fourier(D, apply_cv(G, tau, side, "inverse", K), "second", "forward")


op_from_symbol = kernel_from_symbol
symbol_from_op = symbol_from_kernel


def left_translation(G: FiniteGroup, z: int) -> np.ndarray:
    """L(z) v (x) = v(z^-1 x)."""
    n = G.order
    M = np.zeros((n, n))
    x = np.arange(n)
    M[x, G.mul[G.inv[z], x]] = 1.0
    return M


def right_translation(G: FiniteGroup, z: int) -> np.ndarray:
    """R(z) u (x) = u(x z)."""
    n = G.order
    M = np.zeros((n, n))
    x = np.arange(n)
    M[x, G.mul[x, z]] = 1.0
    return M


def weyl(G: FiniteGroup, D: UnitaryDual, tau: TauMap, k: int, x: int, side: str = "R") -> np.ndarray:
    """Weyl operator on functions G -> C^d, flattened with index ``y*d + i``.

    Right: ``[W Θ](y) = ξ(τ(x)) ξ(y)^* Θ(y x^-1)``.
    Left:  ``[W Θ](y) = ξ(y)^* ξ(τ(x)) Θ(x^-1 y)``.
    """
    side = _side(side)
    M = D.irreps[k].matrices
    d, n = M.shape[1], G.order
    t = M[np.asarray(tau)[x]]
    W = np.zeros((n, d, n, d), dtype=complex)
    for y in range(n):
        adj = M[y].conj().T
        if side == "R":
            W[y, :, G.mul[y, G.inv[x]], :] = t @ adj
        else:
            W[y, :, G.mul[G.inv[x], y], :] = adj @ t
    return W.reshape(n * d, n * d)


def fourier_wigner(G: FiniteGroup, D: UnitaryDual, tau: TauMap, u, v, side: str = "R") -> MixedField:
    """Dual-side field ``(F ⊗ id)(CV)^-1 (v ⊗ ū)``, indexed ``[k][x]``."""
    F = np.outer(np.asarray(v, dtype=complex), np.conj(u))
    return partial_fourier(D, apply_cv(G, tau, side, "inverse", F), "first", "forward")


def fourier_wigner_weyl(G: FiniteGroup, D: UnitaryDual, tau: TauMap, u, v, side: str = "R") -> MixedField:
    """Same transform computed by pairing Weyl operators against ``ū ⊗ φ`` and ``v̄ ⊗ ψ``."""
    u = np.asarray(u, dtype=complex)
    v = np.asarray(v, dtype=complex)
    out = []
    for k, d in enumerate(D.dims):
        eye = np.eye(d)
        left = np.kron(v[None, :], eye)  # (d, n d)
        right = np.kron(u.conj()[:, None], eye)  # (n d, d)
        out.append(np.array([left @ weyl(G, D, tau, k, x, side) @ right for x in range(G.order)]))
    return out


def wigner(G: FiniteGroup, D: UnitaryDual, tau: TauMap, u, v, side: str = "R") -> MixedField:
    """Symbol ``(id ⊗ F)(CV)^-1 (v ⊗ ū)``; its quantization is the rank-one map ``w -> <w,u> v``."""
    F = np.outer(np.asarray(v, dtype=complex), np.conj(u))
    return partial_fourier(D, apply_cv(G, tau, side, "inverse", F), "second", "forward")


def po(G: FiniteGroup, D: UnitaryDual, tau: TauMap, frak_a: MixedField, side: str = "R") -> np.ndarray:
    """Quantization of a dual-side symbol: ``Op((F^-1 ⊗ F) 𝔞)``."""
    return op_from_symbol(G, D, tau, dual_side_to_symbol(D, frak_a), side)


def po_weyl(G: FiniteGroup, D: UnitaryDual, tau: TauMap, frak_a: MixedField, side: str = "R") -> np.ndarray:
    """Integrated form: entry (z, y) is ``sum_{x,ξ} w Tr[𝔞(ξ,x) W(ξ,x)_{z,y}^*]``."""
    n = G.order
    P = np.zeros((n, n), dtype=complex)
    for k, (w, d) in enumerate(zip(D.weights, D.dims)):
        for x in range(n):
            W = weyl(G, D, tau, k, x, side).reshape(n, d, n, d)
            # Tr[A B^*] = sum_ij A_ij conj(B_ij)
            P += w * np.einsum("ij,ziyj->zy", frak_a[k][x], W.conj())
    return P


def rank_one(u, v) -> np.ndarray:
    """Matrix of ``w -> <w, u> v``."""
    return np.outer(np.asarray(v, dtype=complex), np.conj(u))


def schatten_norm(T: np.ndarray, p: float) -> float:
    return float(schatten(np.asarray(T), p))


def operator_metrics(T: np.ndarray) -> dict:
    T = np.asarray(T)
    return {
        "hs_norm": float(np.linalg.norm(T)),
        "operator_norm": schatten_norm(T, np.inf),
        "spectral_radius": float(np.max(np.abs(np.linalg.eigvals(T)))) if T.size else 0.0,
    }
