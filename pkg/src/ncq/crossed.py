"""Twisted crossed-product side: elements Φ(q, x) on G x G and their Schrödinger images.

The coefficient algebra is all functions on G, with the translation action
``θ_y f (q) = f(y^-1 q)``. An element is an ``(n, n)`` array ``Phi[q, x]``.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .groups import FiniteGroup, TauMap, UnitaryDual
from .harmonic import MixedField, inverse_fourier
from .quantize import apply_cv, left_translation, op_from_symbol

QUANTIZATIONS = ("L-e", "L-id", "R-e", "R-id")


def _grid(n: int):
    return np.meshgrid(np.arange(n), np.arange(n), indexing="ij")


def twisted_convolve(G: FiniteGroup, tau: TauMap, Phi: np.ndarray, Psi: np.ndarray) -> np.ndarray:
    """(Φ ⋄ Ψ)(q,x) = Σ_y Φ(τ(y)^-1 τ(x) q, y) Ψ(τ(y^-1 x)^-1 y^-1 τ(x) q, y^-1 x)."""
    mul, inv, tau = G.mul, G.inv, np.asarray(tau)
    n = G.order
    Q, X = _grid(n)
    tq = mul[tau[X], Q]  # τ(x) q
    out = np.zeros((n, n), dtype=complex)
    for y in range(n):
        z = mul[inv[y], X]
        left = Phi[mul[inv[tau[y]], tq], y]
        right = Psi[mul[mul[inv[tau[z]], inv[y]], tq], z]
        out += left * right
    return out


def twisted_involute(G: FiniteGroup, tau: TauMap, Phi: np.ndarray) -> np.ndarray:
    """Φ^⋄(q,x) = conj Φ(τ(x^-1)^-1 x^-1 τ(x) q, x^-1)."""
    mul, inv, tau = G.mul, G.inv, np.asarray(tau)
    Q, X = _grid(G.order)
    xi = inv[X]
    return np.conj(Phi[mul[mul[inv[tau[xi]], xi], mul[tau[X], Q]], xi])


def schrodinger(G: FiniteGroup, tau: TauMap, Phi: np.ndarray) -> np.ndarray:
    """Kernel K(x,y) = Φ(τ(xy^-1)^-1 x, xy^-1)."""
    return apply_cv(G, tau, "L", "forward", Phi)


def theta(G: FiniteGroup, y: int, f: np.ndarray) -> np.ndarray:
    return np.asarray(f)[G.mul[G.inv[y], np.arange(G.order)]]


def schrodinger_integrated(G: FiniteGroup, tau: TauMap, Phi: np.ndarray) -> np.ndarray:
    """Same operator as ``schrodinger`` assembled as Σ_z Mult(θ_{τ(z)} Φ(·,z)) L(z)."""
    tau = np.asarray(tau)
    n = G.order
    out = np.zeros((n, n), dtype=complex)
    for z in range(n):
        out += mult_op(theta(G, tau[z], Phi[:, z])) @ left_translation(G, z)
    return out


def nu_transport(G: FiniteGroup, tau: TauMap, tau2: TauMap, Phi: np.ndarray) -> np.ndarray:
    """(ν Φ)(q,x) = θ_{τ(x)^-1 τ2(x)}[Φ(·,x)](q), so that Sch^tau2 = Sch^tau ∘ ν."""
    mul, inv = G.mul, G.inv
    tau, tau2 = np.asarray(tau), np.asarray(tau2)
    Q, X = _grid(G.order)
    return Phi[mul[mul[inv[tau2[X]], tau[X]], Q], X]


def mult_op(f: np.ndarray) -> np.ndarray:
    return np.diag(np.asarray(f, dtype=complex))


def conv_op(G: FiniteGroup, side: str, f: np.ndarray) -> np.ndarray:
    """Left: v -> f * v.  Right: v -> v * f.  (f*g)(x) = Σ_y f(y) g(y^-1 x)."""
    f = np.asarray(f, dtype=complex)
    X, Y = _grid(G.order)
    if side.upper().startswith("L"):
        return f[G.mul[X, G.inv[Y]]]
    if side.upper().startswith("R"):
        return f[G.mul[G.inv[Y], X]]
    raise ValueError(f"side must be L or R, got {side!r}")


def product_symbol(D: UnitaryDual, g: np.ndarray, beta: list) -> MixedField:
    """a(x, ξ) = g(x) β(ξ)."""
    g = np.asarray(g, dtype=complex)
    return [g[:, None, None] * np.asarray(b)[None] for b in beta]


def product_symbol_op(G: FiniteGroup, D: UnitaryDual, quantization: str, g: np.ndarray, beta: list) -> np.ndarray:
    """Factorized operator for a(x, ξ) = g(x) β(ξ) under one of ``QUANTIZATIONS``."""
    if quantization not in QUANTIZATIONS:
        raise ValueError(f"quantization must be one of {QUANTIZATIONS}")
    side, tau = quantization.split("-")
    C = conv_op(G, side, inverse_fourier(D, beta))
    M = mult_op(g)
    return M @ C if tau == "e" else C @ M


# -- dynamical systems and covariant families ---------------------------------------

@dataclass(frozen=True, eq=False)
class DynamicalSystem:
    """Finite G-space: ``action[x, w]`` is the image of point w under x."""

    action: np.ndarray
    name: str = ""

    def __post_init__(self):
        a = np.ascontiguousarray(self.action, dtype=np.intp)
        a.setflags(write=False)
        object.__setattr__(self, "action", a)

    @property
    def omega_size(self) -> int:
        return self.action.shape[1]

    def validate(self, G: FiniteGroup) -> None:
        a = self.action
        m = self.omega_size
        if a.shape != (G.order, m):
            raise ValueError(f"action must have shape ({G.order}, |Ω|)")
        if np.any((a < 0) | (a >= m)):
            raise ValueError("action values out of range")
        if any(len(set(row.tolist())) != m for row in a):
            raise ValueError("each group element must act by a permutation")
        if not np.array_equal(a[0], np.arange(m)):
            raise ValueError("identity must act trivially")
        # ϱ_x ∘ ϱ_y = ϱ_{xy}
        composed = a[np.arange(G.order)[:, None, None], a[None, :, :]]
        if not np.array_equal(composed, a[G.mul]):
            raise ValueError("action is not a homomorphism")


def translation_system(G: FiniteGroup) -> DynamicalSystem:
    """Ω = G with ϱ_x(w) = x w."""
    return DynamicalSystem(G.mul.copy(), "translation")


def trivial_system(G: FiniteGroup, size: int = 1) -> DynamicalSystem:
    return DynamicalSystem(np.tile(np.arange(size), (G.order, 1)), "trivial")


def generated_subgroup(G: FiniteGroup, gens) -> list[int]:
    elems = {0}
    frontier = [0]
    while frontier:
        x = frontier.pop()
        for g in gens:
            y = int(G.mul[x, g])
            if y not in elems:
                elems.add(y)
                frontier.append(y)
    return sorted(elems)


def is_normal(G: FiniteGroup, H) -> bool:
    hs = set(int(h) for h in H)
    return all(int(G.mul[G.mul[x, h], G.inv[x]]) in hs for x in range(G.order) for h in hs)


def coset_system(G: FiniteGroup, H) -> DynamicalSystem:
    """Ω = G/H (left cosets, ordered by smallest representative), ϱ_x(yH) = xyH."""
    H = sorted(set(int(h) for h in H))
    owner = -np.ones(G.order, dtype=np.intp)
    reps = []
    for y in range(G.order):
        if owner[y] < 0:
            owner[G.mul[y, H]] = len(reps)
            reps.append(y)
    action = owner[G.mul[:, reps]]
    return DynamicalSystem(action, "coset")


def seeded_permutation_system(G: FiniteGroup, rng: np.random.Generator, H=None) -> DynamicalSystem:
    """A shuffled disjoint union of G, G/H and a fixed point, giving several orbits."""
    H = [0] if H is None else H
    parts = [G.mul, coset_system(G, H).action, np.zeros((G.order, 1), dtype=np.intp)]
    offsets = np.cumsum([0] + [p.shape[1] for p in parts[:-1]])
    action = np.concatenate([p + off for p, off in zip(parts, offsets)], axis=1)
    m = action.shape[1]
    perm = rng.permutation(m)  # old point i is relabeled perm[i]
    relabeled = np.empty_like(action)
    relabeled[:, perm] = perm[action]
    return DynamicalSystem(relabeled, "seeded")


def normal_subgroup(G: FiniteGroup) -> list[int]:
    """A proper nontrivial normal subgroup when one is easy to find, else {e}."""
    for x in range(1, G.order):
        H = generated_subgroup(G, [x])
        if len(H) < G.order and is_normal(G, H):
            return H
    return [0]


def localize(system: DynamicalSystem, omega: int, h: MixedField) -> MixedField:
    """h_(ω)(x, ξ) = h(ϱ_x(ω), ξ)."""
    idx = system.action[:, omega]
    return [hk[idx] for hk in h]


def op_omega(
    G: FiniteGroup, D: UnitaryDual, tau: TauMap, system: DynamicalSystem, omega: int, h: MixedField
) -> np.ndarray:
    """Covariant-family operator at ω.

    Built from the Ω-valued coefficient Φ(w, z) = Σ_ξ w_ξ Tr[ξ(z) h(w, ξ)]
    as K(x,y) = Φ(ϱ_{τ(z)^-1 x}(ω), z) with z = x y^-1.
    """
    if not 0 <= omega < system.omega_size:
        raise ValueError(f"omega {omega} out of range 0..{system.omega_size - 1}")
    m = system.omega_size
    Phi = np.zeros((m, G.order), dtype=complex)
    for w, r, hk in zip(D.weights, D, h):
        Phi += w * np.einsum("zij,wji->wz", r.matrices, hk)
    mul, inv, tau = G.mul, G.inv, np.asarray(tau)
    X, Y = _grid(G.order)
    Z = mul[X, inv[Y]]
    points = system.action[mul[inv[tau[Z]], X], omega]
    return Phi[points, Z]


def op_omega_direct(G, D, tau, system, omega, h) -> np.ndarray:
    """Reference route: left quantization of the localized symbol."""
    return op_from_symbol(G, D, tau, localize(system, omega, h), "L")


def orbits(system: DynamicalSystem) -> list[list[int]]:
    m = system.omega_size
    parent = list(range(m))

    def find(i):
        while parent[i] != i:
            parent[i] = parent[parent[i]]
            i = parent[i]
        return i

    for row in system.action:
        for w in range(m):
            a, b = find(w), find(int(row[w]))
            if a != b:
                parent[max(a, b)] = min(a, b)
    groups: dict[int, list[int]] = {}
    for w in range(m):
        groups.setdefault(find(w), []).append(w)
    return sorted(groups.values())


def restrict(system: DynamicalSystem, orbit, h: MixedField) -> tuple[DynamicalSystem, MixedField]:
    """Restrict the system and an Ω-symbol to an invariant subset, reindexed in order."""
    orbit = list(orbit)
    index = {w: i for i, w in enumerate(orbit)}
    sub = np.array([[index[int(system.action[x, w])] for w in orbit] for x in range(system.action.shape[0])])
    return DynamicalSystem(sub, system.name + "|orbit"), [hk[orbit] for hk in h]


def random_omega_symbol(D: UnitaryDual, m: int, rng: np.random.Generator) -> MixedField:
    return [rng.standard_normal((m, d, d)) + 1j * rng.standard_normal((m, d, d)) for d in D.dims]


def spectrum(T: np.ndarray) -> np.ndarray:
    return np.linalg.eigvals(np.asarray(T))


def hausdorff(A: np.ndarray, B: np.ndarray) -> float:
    """Symmetric Hausdorff distance between two finite subsets of C."""
    A, B = np.asarray(A).ravel(), np.asarray(B).ravel()
    if A.size == 0 or B.size == 0:
        return 0.0 if A.size == B.size else np.inf
    d = np.abs(A[:, None] - B[None, :])
    return float(max(d.min(axis=1).max(), d.min(axis=0).max()))


def orbit_spectra(G, D, tau, system: DynamicalSystem, h: MixedField) -> list[dict]:
    """Spectra of the covariant family on each orbit with the largest pairwise distance."""
    out = []
    for orb in orbits(system):
        specs = [spectrum(op_omega(G, D, tau, system, w, h)) for w in orb]
        dist = max((hausdorff(specs[i], specs[j]) for i in range(len(specs)) for j in range(i + 1, len(specs))), default=0.0)
        out.append({"orbit": orb, "spectra": specs, "max_distance": dist})
    return out
