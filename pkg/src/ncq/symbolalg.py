"""Symbol algebra: composition, involution, change of tau, adjoints, symmetry functions."""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field

import numpy as np

from .groups import FiniteGroup, TauMap, UnitaryDual, tau_hat, tau_tilde
from .harmonic import MixedField, partial_fourier
from .quantize import _side, kernel_from_symbol, symbol_from_kernel


def compose(G: FiniteGroup, D: UnitaryDual, tau: TauMap, a: MixedField, b: MixedField, side: str = "R") -> MixedField:
    Ka = kernel_from_symbol(G, D, tau, a, side)
    Kb = kernel_from_symbol(G, D, tau, b, side)
    return symbol_from_kernel(G, D, tau, Ka @ Kb, side)


def involute(G: FiniteGroup, D: UnitaryDual, tau: TauMap, a: MixedField, side: str = "R") -> MixedField:
    K = kernel_from_symbol(G, D, tau, a, side)
    return symbol_from_kernel(G, D, tau, K.conj().T, side)


def convert_tau(
    G: FiniteGroup, D: UnitaryDual, tau: TauMap, tau2: TauMap, a: MixedField, side: str = "R"
) -> MixedField:
    """Symbol ``b`` with ``Op^tau(b) = Op^tau2(a)``.

    The partially inverted symbol is precomposed with the map
    ``(x, y) -> (x tau(y) tau2(y)^-1, y)`` on the right side and
    ``(x, y) -> (tau2(y)^-1 tau(y) x, y)`` on the left side.
    """
    side = _side(side)
    mul, inv = G.mul, G.inv
    tau, tau2 = np.asarray(tau), np.asarray(tau2)
    n = G.order
    X, Y = np.meshgrid(np.arange(n), np.arange(n), indexing="ij")
    if side == "R":
        Xp = mul[mul[X, tau[Y]], inv[tau2[Y]]]
    else:
        Xp = mul[mul[inv[tau2[Y]], tau[Y]], X]
    A = partial_fourier(D, a, "second", "inverse")
    return partial_fourier(D, A[Xp, Y], "second", "forward")


def pointwise_adjoint(a: MixedField) -> MixedField:
    return [np.conj(np.swapaxes(x, -1, -2)) for x in a]


def adjoint_symbol(G: FiniteGroup, tau: TauMap, a: MixedField, side: str = "R") -> tuple[TauMap, MixedField]:
    """Return ``(tau', a*)`` with ``Op^tau(a)^* = Op^tau'(a*)``."""
    new_tau = tau_tilde(G, tau) if _side(side) == "R" else tau_hat(G, tau)
    return new_tau, pointwise_adjoint(a)


# -- symmetry functions -------------------------------------------------------------

def is_symmetry_function(G: FiniteGroup, sigma: TauMap, side: str = "R") -> bool:
    """Right: sigma(x) = sigma(x^-1) x.  Left: sigma(x) = x sigma(x^-1)."""
    sigma = np.asarray(sigma)
    x = np.arange(G.order)
    if _side(side) == "R":
        other = G.mul[sigma[G.inv], x]
    else:
        other = G.mul[x, sigma[G.inv]]
    return bool(np.array_equal(sigma, other))


@dataclass
class SymmetrySearchResult:
    exists: bool
    witnesses: list[TauMap] = field(default_factory=list)
    count: int | str = 0


def symmetry_search(G: FiniteGroup, side: str = "R", limit: int = 1000) -> SymmetrySearchResult:
    """Enumerate all symmetry functions, pruned by the pairing x <-> x^-1.

    On each pair {x, x^-1} with x != x^-1 the value at the smaller index is
    free and the other value is forced. An element with x = x^-1 != e makes
    the relation impossible. The identity is unconstrained.
    """
    side = _side(side)
    n = G.order
    inv = G.inv
    if any(inv[x] == x for x in range(1, n)):
        return SymmetrySearchResult(False, [], 0)
    reps = [0] + [x for x in range(1, n) if x < inv[x]]
    witnesses: list[TauMap] = []
    for choice in itertools.product(range(n), repeat=len(reps)):
        if len(witnesses) == limit:
            return SymmetrySearchResult(True, witnesses, "truncated")
        sigma = np.empty(n, dtype=np.intp)
        for x, s in zip(reps, choice):
            sigma[x] = s
            if x:
                # right: sigma(x^-1) = sigma(x) x^-1; left: sigma(x^-1) = x^-1 sigma(x)
                sigma[inv[x]] = G.mul[s, inv[x]] if side == "R" else G.mul[inv[x], s]
        witnesses.append(sigma)
    return SymmetrySearchResult(bool(witnesses), witnesses, len(witnesses))


def symmetry_odd_power(G: FiniteGroup) -> TauMap:
    """x -> x^((n+1)/2); a two-sided symmetry function when n is odd."""
    n = G.order
    if n % 2 == 0:
        raise ValueError(f"odd_power needs odd order, got {n}")
    return np.array([G.power(x, (n + 1) // 2) for x in range(n)], dtype=np.intp)


def symmetry_product(G1: FiniteGroup, G2: FiniteGroup, s1: TauMap, s2: TauMap, side: str = "R") -> TauMap:
    """Coordinatewise map on the product (index ``x1*|G2| + x2``)."""
    if not (is_symmetry_function(G1, s1, side) and is_symmetry_function(G2, s2, side)):
        raise ValueError("product strategy needs symmetry functions on both factors")
    return (np.asarray(s1)[:, None] * G2.order + np.asarray(s2)[None, :]).ravel()


def check_cocycle(H: FiniteGroup, N: FiniteGroup, cocycle: np.ndarray) -> None:
    """Raise unless ``cocycle`` is a normalized 2-cocycle H x H -> N, N Abelian."""
    c = np.asarray(cocycle)
    if c.shape != (H.order, H.order):
        raise ValueError("cocycle must be an |H| x |H| table of N-elements")
    if not N.is_abelian():
        raise ValueError("central extension needs an Abelian N")
    if np.any(c[0, :] != 0) or np.any(c[:, 0] != 0):
        raise ValueError("cocycle is not normalized")
    x, y, z = np.meshgrid(*(np.arange(H.order),) * 3, indexing="ij")
    lhs = N.mul[c[x, y], c[H.mul[x, y], z]]
    rhs = N.mul[c[y, z], c[x, H.mul[y, z]]]
    if not np.array_equal(lhs, rhs):
        raise ValueError("cocycle identity fails")


def central_extension(H: FiniteGroup, N: FiniteGroup, cocycle: np.ndarray) -> FiniteGroup:
    """H x N with (h,n)(h',n') = (hh', n n' c(h,h')), index ``h*|N| + n``."""
    check_cocycle(H, N, cocycle)
    nh, nn = H.order, N.order
    h = np.repeat(np.arange(nh), nn)
    k = np.tile(np.arange(nn), nh)
    c = np.asarray(cocycle)
    hh = H.mul[h[:, None], h[None, :]]
    kk = N.mul[N.mul[k[:, None], k[None, :]], c[h[:, None], h[None, :]]]
    labels = tuple(f"({H.labels[i]};{N.labels[j]})" for i, j in zip(h, k))
    return FiniteGroup(hh * nn + kk, labels, "extension")


def symmetry_central_extension(
    H: FiniteGroup, N: FiniteGroup, cocycle: np.ndarray, sigma_h: TauMap, sigma_n: TauMap, side: str = "R"
) -> tuple[FiniteGroup, TauMap]:
    """Symmetry function on a central extension built from those of H and N.

    Right: (h, n) -> (sigma_H(h), sigma_N[c(sigma_H(h^-1), h) n]).
    Left:  (h, n) -> (sigma_H(h), sigma_N[c(h, sigma_H(h^-1)) n]).
    """
    side = _side(side)
    G = central_extension(H, N, cocycle)
    if not (is_symmetry_function(H, sigma_h, side) and is_symmetry_function(N, sigma_n, side)):
        raise ValueError("central_extension strategy needs symmetry functions on H and N")
    c = np.asarray(cocycle)
    sh, sn = np.asarray(sigma_h), np.asarray(sigma_n)
    nn = N.order
    h = np.repeat(np.arange(H.order), nn)
    k = np.tile(np.arange(nn), H.order)
    twist = c[sh[H.inv[h]], h] if side == "R" else c[h, sh[H.inv[h]]]
    sigma = sh[h] * nn + sn[N.mul[twist, k]]
    return G, sigma.astype(np.intp)
