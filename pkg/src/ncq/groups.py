"""Finite groups as multiplication tables, with explicit unitary duals.

Elements are integers ``0..n-1`` and element 0 is always the identity.
Each catalog family fixes its element ordering (documented on the
constructor) so that every table and every irrep matrix is reproducible.

The Haar measure is counting measure, hence the Plancherel weight of an
irrep of dimension ``d`` is ``d / n``.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass
from typing import Callable, Hashable, Sequence

import numpy as np

from .report import Report

TauMap = np.ndarray  # int array of length |G|, tau[x] = index of tau(x)

GROUP_TOL = 1e-12
CHAR_TOL = 1e-10


@dataclass(frozen=True, eq=False)
class FiniteGroup:
    mul: np.ndarray
    labels: tuple[str, ...]
    name: str = ""

    def __post_init__(self):
        mul = np.ascontiguousarray(self.mul, dtype=np.intp)
        mul.setflags(write=False)
        object.__setattr__(self, "mul", mul)
        inv = np.empty(len(mul), dtype=np.intp)
        for x in range(len(mul)):
            hits = np.flatnonzero(mul[x] == 0)
            inv[x] = hits[0] if len(hits) else -1
        inv.setflags(write=False)
        object.__setattr__(self, "inv", inv)

    @property
    def order(self) -> int:
        return len(self.mul)

    @property
    def identity(self) -> int:
        return 0

    def power(self, x: int, k: int) -> int:
        k %= self.element_order(x)
        out = 0
        for _ in range(k):
            out = self.mul[out, x]
        return int(out)

    def element_order(self, x: int) -> int:
        k, y = 1, x
        while y != 0:
            y = self.mul[y, x]
            k += 1
        return k

    def is_abelian(self) -> bool:
        return bool(np.array_equal(self.mul, self.mul.T))

    def __repr__(self) -> str:
        return f"FiniteGroup({self.name or '?'}, order={self.order})"


@dataclass(frozen=True, eq=False)
class UnitaryIrrep:
    label: str
    matrices: np.ndarray  # (n, d, d) complex

    def __post_init__(self):
        m = np.array(self.matrices, dtype=complex)
        if m.ndim != 3 or m.shape[1] != m.shape[2]:
            raise ValueError(f"irrep {self.label!r}: matrices must have shape (n, d, d)")
        m.setflags(write=False)
        object.__setattr__(self, "matrices", m)

    @property
    def dim(self) -> int:
        return self.matrices.shape[1]

    @property
    def character(self) -> np.ndarray:
        return np.trace(self.matrices, axis1=1, axis2=2)


@dataclass(frozen=True, eq=False)
class UnitaryDual:
    irreps: tuple[UnitaryIrrep, ...]

    def __post_init__(self):
        object.__setattr__(self, "irreps", tuple(self.irreps))

    @property
    def group_order(self) -> int:
        return self.irreps[0].matrices.shape[0]

    @property
    def dims(self) -> list[int]:
        return [r.dim for r in self.irreps]

    @property
    def weights(self) -> np.ndarray:
        return np.array(self.dims, dtype=float) / self.group_order

    @property
    def labels(self) -> list[str]:
        return [r.label for r in self.irreps]

    @property
    def trivial_index(self) -> int:
        for k, r in enumerate(self.irreps):
            if r.dim == 1 and np.allclose(r.matrices, 1.0):
                return k
        raise ValueError("dual has no trivial representation")

    def __len__(self) -> int:
        return len(self.irreps)

    def __iter__(self):
        return iter(self.irreps)


def sorted_dual(irreps: Sequence[UnitaryIrrep]) -> UnitaryDual:
    return UnitaryDual(tuple(sorted(irreps, key=lambda r: (r.dim, r.label))))


# -- table construction helpers ----------------------------------------------

def _table(elements: Sequence, op: Callable, key: Callable[[object], Hashable]) -> np.ndarray:
    index = {key(e): i for i, e in enumerate(elements)}
    n = len(elements)
    mul = np.empty((n, n), dtype=np.intp)
    for i, a in enumerate(elements):
        for j, b in enumerate(elements):
            mul[i, j] = index[key(op(a, b))]
    return mul


def _matrix_key(m: np.ndarray) -> tuple:
    return tuple(np.round(m, 9).ravel().tolist())


# -- catalog -------------------------------------------------------------------

def cyclic(n: int) -> tuple[FiniteGroup, UnitaryDual]:
    """Z_n with element k and characters chi_j(k) = exp(2 pi i j k / n)."""
    if n < 1:
        raise ValueError("cyclic order must be >= 1")
    k = np.arange(n)
    mul = (k[:, None] + k[None, :]) % n
    width = len(str(n - 1))
    irreps = [
        UnitaryIrrep(f"chi{j:0{width}d}", np.exp(2j * np.pi * j * k / n).reshape(n, 1, 1))
        for j in range(n)
    ]
    return FiniteGroup(mul, tuple(str(x) for x in k), f"cyclic:{n}"), sorted_dual(irreps)


def dihedral(n: int) -> tuple[FiniteGroup, UnitaryDual]:
    """D_n of order 2n; index ``j*n + k`` is r^k s^j with s r s = r^-1."""
    if n < 3:
        raise ValueError("dihedral parameter must be >= 3")
    elems = [(k, j) for j in range(2) for k in range(n)]

    def op(a, b):
        (ka, ja), (kb, jb) = a, b
        return ((ka + (-1) ** ja * kb) % n, (ja + jb) % 2)

    mul = _table(elems, op, lambda e: e)
    labels = tuple(("r%d" % k if k else "e") if j == 0 else ("r%ds" % k if k else "s") for k, j in elems)
    ks = np.array([k for k, _ in elems])
    js = np.array([j for _, j in elems])

    irreps = []
    signs = [(1, 1), (1, -1)] + ([(-1, 1), (-1, -1)] if n % 2 == 0 else [])
    for rs, ss in signs:
        vals = (rs ** ks) * (ss ** js)
        irreps.append(UnitaryIrrep(f"rho({rs:+d},{ss:+d})", vals.astype(complex).reshape(-1, 1, 1)))
    width = len(str(n))
    for m in range(1, (n - 1) // 2 + 1):
        w = np.exp(2j * np.pi * m / n)
        mats = []
        for k, j in elems:
            rot = np.diag([w**k, w ** (-k)])
            mats.append(rot @ np.array([[0, 1], [1, 0]]) if j else rot)
        irreps.append(UnitaryIrrep(f"std{m:0{width}d}", np.array(mats)))
    return FiniteGroup(mul, labels, f"dihedral:{n}"), sorted_dual(irreps)


def quaternion8() -> tuple[FiniteGroup, UnitaryDual]:
    """Q_8 ordered as 1, -1, i, -i, j, -j, k, -k."""
    one = np.eye(2, dtype=complex)
    qi = np.diag([1j, -1j])
    qj = np.array([[0, 1], [-1, 0]], dtype=complex)
    qk = qi @ qj
    mats = [s * m for m in (one, qi, qj, qk) for s in (1, -1)]
    labels = ("1", "-1", "i", "-i", "j", "-j", "k", "-k")
    mul = _table(mats, np.matmul, _matrix_key)
    # one-dimensional characters factor through Q8/{+-1} = Z2 x Z2
    signs = {
        "triv": (1, 1, 1, 1),
        "sgn_i": (1, 1, -1, -1),
        "sgn_j": (1, -1, 1, -1),
        "sgn_k": (1, -1, -1, 1),
    }
    irreps = [
        UnitaryIrrep(name, np.repeat(np.array(v, dtype=complex), 2).reshape(8, 1, 1))
        for name, v in signs.items()
    ]
    irreps.append(UnitaryIrrep("spin", np.array(mats)))
    return FiniteGroup(mul, labels, "quaternion8"), sorted_dual(irreps)


def _perm_matrix(p: Sequence[int]) -> np.ndarray:
    m = np.zeros((len(p), len(p)))
    m[list(p), range(len(p))] = 1.0
    return m


def _sum_zero_basis(n: int) -> np.ndarray:
    """Orthonormal basis (columns) of the complement of the constants in R^n."""
    q, _ = np.linalg.qr(np.eye(n) - 1.0 / n)
    return q[:, : n - 1]


def _standard_rep(perms: Sequence[Sequence[int]]) -> np.ndarray:
    n = len(perms[0])
    q = _sum_zero_basis(n)
    return np.array([q.T @ _perm_matrix(p) @ q for p in perms], dtype=complex)


def _sign(p: Sequence[int]) -> int:
    s, seen = 1, set()
    for i in range(len(p)):
        if i in seen:
            continue
        j, length = i, 0
        while j not in seen:
            seen.add(j)
            j = p[j]
            length += 1
        s *= (-1) ** (length - 1)
    return s


def symmetric(n: int) -> tuple[FiniteGroup, UnitaryDual]:
    """S_n for n <= 4, permutations in lexicographic order; (pq)(i) = p(q(i))."""
    if not 1 <= n <= 4:
        raise ValueError("symmetric group supported for 1 <= n <= 4")
    perms = list(itertools.permutations(range(n)))
    mul = _table(perms, lambda p, q: tuple(p[q[i]] for i in range(n)), lambda e: e)
    labels = tuple("".join(str(i + 1) for i in p) for p in perms)
    sgn = np.array([_sign(p) for p in perms], dtype=complex).reshape(-1, 1, 1)
    irreps = [UnitaryIrrep("triv", np.ones((len(perms), 1, 1), dtype=complex))]
    if n >= 2:
        irreps.append(UnitaryIrrep("sign", sgn))
    if n >= 3:
        std = _standard_rep(perms)
        irreps.append(UnitaryIrrep("std", std))
    if n == 4:
        irreps.append(UnitaryIrrep("std*sign", std * sgn))
        # S4 -> S3 through the action on the three pairings of {0,1,2,3}
        pairings = [frozenset({frozenset({0, 1}), frozenset({2, 3})}),
                    frozenset({frozenset({0, 2}), frozenset({1, 3})}),
                    frozenset({frozenset({0, 3}), frozenset({1, 2})})]
        images = []
        for p in perms:
            moved = [frozenset(frozenset(p[i] for i in pair) for pair in pr) for pr in pairings]
            images.append(tuple(pairings.index(m) for m in moved))
        irreps.append(UnitaryIrrep("std2", _standard_rep(images)))
    return FiniteGroup(mul, labels, f"symmetric:{n}"), sorted_dual(irreps)


def _is_prime(p: int) -> bool:
    return p >= 2 and all(p % k for k in range(2, math.isqrt(p) + 1))


def heisenberg_mod_p(p: int) -> tuple[FiniteGroup, UnitaryDual]:
    """Heisenberg group over Z_p, index ``(a*p + b)*p + c`` for (a, b, c).

    Law ``(a,b,c)(a',b',c') = (a+a', b+b', c+c'+ab')``; the p-dimensional
    irreps act on functions on Z_p by ``phi(t) -> e(k(c+tb)/p) phi(t+a)``.
    """
    if not (_is_prime(p) and p % 2 == 1 and p <= 13):
        raise ValueError("heisenberg_mod_p needs an odd prime p <= 13")
    elems = list(itertools.product(range(p), repeat=3))
    a, b, c = (np.array(v) for v in zip(*elems))
    mul = (((a[:, None] + a[None, :]) % p) * p + (b[:, None] + b[None, :]) % p) * p + (
        c[:, None] + c[None, :] + a[:, None] * b[None, :]
    ) % p
    labels = tuple(f"({x},{y},{z})" for x, y, z in elems)
    irreps = []
    for al, be in itertools.product(range(p), repeat=2):
        vals = np.exp(2j * np.pi * (al * a + be * b) / p)
        irreps.append(UnitaryIrrep(f"chi{al:02d}{be:02d}", vals.reshape(-1, 1, 1)))
    t = np.arange(p)
    for k in range(1, p):
        mats = np.zeros((len(elems), p, p), dtype=complex)
        for idx, (x, y, z) in enumerate(elems):
            mats[idx, t, (t + x) % p] = np.exp(2j * np.pi * k * (z + t * y) / p)
        irreps.append(UnitaryIrrep(f"pi{k:02d}", mats))
    return FiniteGroup(mul, labels, f"heisenberg:{p}"), sorted_dual(irreps)


def direct_product(
    g1: FiniteGroup, g2: FiniteGroup, d1: UnitaryDual, d2: UnitaryDual
) -> tuple[FiniteGroup, UnitaryDual]:
    """Product group with index ``x1*|G2| + x2``; dual is all tensor products."""
    n1, n2 = g1.order, g2.order
    x1 = np.repeat(np.arange(n1), n2)
    x2 = np.tile(np.arange(n2), n1)
    mul = g1.mul[x1[:, None], x1[None, :]] * n2 + g2.mul[x2[:, None], x2[None, :]]
    labels = tuple(f"{g1.labels[i]}|{g2.labels[j]}" for i, j in zip(x1, x2))
    irreps = []
    for r1 in d1:
        for r2 in d2:
            mats = np.einsum("xij,xkl->xikjl", r1.matrices[x1], r2.matrices[x2])
            mats = mats.reshape(n1 * n2, r1.dim * r2.dim, r1.dim * r2.dim)
            irreps.append(UnitaryIrrep(f"{r1.label}*{r2.label}", mats))
    name = f"{g1.name}x{g2.name}" if g1.name and g2.name else ""
    return FiniteGroup(mul, labels, name), sorted_dual(irreps)


FAMILIES = {
    "cyclic": cyclic,
    "dihedral": dihedral,
    "quaternion8": quaternion8,
    "symmetric": symmetric,
    "heisenberg": heisenberg_mod_p,
}


def make_group(spec: str) -> tuple[FiniteGroup, UnitaryDual]:
    """Build a catalog group from ``family[:param]``, products joined by ``x``.

    >>> G, D = make_group("cyclic:2xsymmetric:3")
    >>> G.order, sorted(D.dims)
    (12, [1, 1, 1, 1, 2, 2])
    """
    parts = [s.strip() for s in spec.split("x") if s.strip()]
    if not parts:
        raise ValueError(f"empty group spec {spec!r}")
    built = [_make_single(p) for p in parts]
    G, D = built[0]
    for G2, D2 in built[1:]:
        G, D = direct_product(G, G2, D, D2)
    report = validate_dual(G, D)
    if not report.passed:
        raise RuntimeError(f"construction bug in {spec}: {[c.name for c in report.failures]}")
    return G, D


def _make_single(spec: str) -> tuple[FiniteGroup, UnitaryDual]:
    family, _, param = spec.partition(":")
    if family not in FAMILIES:
        raise ValueError(f"unknown group family {family!r}; known: {sorted(FAMILIES)}")
    if family == "quaternion8":
        if param:
            raise ValueError("quaternion8 takes no parameter")
        return quaternion8()
    try:
        n = int(param)
    except ValueError:
        raise ValueError(f"family {family!r} needs an integer parameter, got {param!r}") from None
    return FAMILIES[family](n)


# Catalog used by the invariant suite; every order is <= 27.
CATALOG = (
    "cyclic:1", "cyclic:2", "cyclic:3", "cyclic:4", "cyclic:5", "cyclic:6", "cyclic:7",
    "cyclic:9", "cyclic:2xcyclic:2", "cyclic:3xcyclic:3", "dihedral:3", "dihedral:4",
    "dihedral:5", "quaternion8", "symmetric:3", "symmetric:4", "cyclic:2xsymmetric:3",
    "heisenberg:3",
)


# -- validation ----------------------------------------------------------------

def validate_group(G: FiniteGroup) -> Report:
    rep = Report()
    n = G.order
    mul = G.mul
    in_range = mul.shape == (n, n) and bool(np.all((mul >= 0) & (mul < n)))
    rep.add("group.table", 0.0 if in_range else 1.0, 0.0)
    if not in_range:
        return rep
    lhs = mul[mul[:, :, None], np.arange(n)[None, None, :]]  # (xy)z
    rhs = mul[np.arange(n)[:, None, None], mul[None, :, :]]  # x(yz)
    rep.add("group.associativity", int(np.count_nonzero(lhs != rhs)), 0)
    ident = np.arange(n)
    rep.add("group.identity", int(np.count_nonzero(mul[0] != ident) + np.count_nonzero(mul[:, 0] != ident)), 0)
    inv = G.inv
    bad = np.count_nonzero(inv < 0)
    if not bad:
        bad = np.count_nonzero(mul[ident, inv] != 0) + np.count_nonzero(mul[inv, ident] != 0)
    rep.add("group.inverse", int(bad), 0)
    return rep


def validate_irrep(G: FiniteGroup, r: UnitaryIrrep, rep: Report | None = None) -> Report:
    rep = rep if rep is not None else Report()
    M = r.matrices
    if M.shape[0] != G.order:
        rep.add(f"irrep[{r.label}].shape", 1.0, 0.0)
        return rep
    prod = np.einsum("xij,yjk->xyik", M, M)
    hom = np.max(np.abs(M[G.mul] - prod))
    rep.add(f"irrep[{r.label}].homomorphism", hom, GROUP_TOL)
    eye = np.eye(r.dim)
    uni = np.max(np.abs(np.einsum("xji,xjk->xik", M.conj(), M) - eye))
    rep.add(f"irrep[{r.label}].unitarity", uni, GROUP_TOL)
    chi = r.character
    irr = abs(np.sum(np.abs(chi) ** 2) / G.order - 1.0)
    rep.add(f"irrep[{r.label}].irreducibility", irr, CHAR_TOL)
    return rep


def validate_dual(G: FiniteGroup, D: UnitaryDual) -> Report:
    rep = validate_group(G)
    for r in D:
        validate_irrep(G, r, rep)
    deficit = G.order - sum(d * d for d in D.dims)
    rep.add("dual.completeness", abs(deficit), 0, detail=f"deficit={deficit}")
    chars = np.array([r.character for r in D]) if len(D) else np.zeros((0, G.order))
    if len(chars) and chars.shape[1] == G.order:
        gram = chars @ chars.conj().T / G.order
        off = gram - np.diag(np.diag(gram))
        rep.add("dual.inequivalence", np.max(np.abs(off)) if len(D) > 1 else 0.0, CHAR_TOL)
    return rep


def schur_residual(G: FiniteGroup, D: UnitaryDual) -> float:
    """Max deviation from the Schur orthogonality relations for matrix coefficients."""
    n = G.order
    coeffs = np.concatenate([r.matrices.reshape(n, -1) for r in D], axis=1)
    expected = np.concatenate([np.full(r.dim**2, 1.0 / r.dim) for r in D])
    gram = coeffs.T @ coeffs.conj() / n
    return float(np.max(np.abs(gram - np.diag(expected))))


# -- tau maps ------------------------------------------------------------------

def tau_e(G: FiniteGroup) -> TauMap:
    return np.zeros(G.order, dtype=np.intp)


def tau_id(G: FiniteGroup) -> TauMap:
    return np.arange(G.order, dtype=np.intp)


def tau_inv(G: FiniteGroup) -> TauMap:
    return G.inv.copy()


def tau_random(G: FiniteGroup, rng: np.random.Generator) -> TauMap:
    return rng.integers(0, G.order, size=G.order).astype(np.intp)


def tau_tilde(G: FiniteGroup, tau: TauMap) -> TauMap:
    """x -> tau(x^-1) x, the map attached to adjoints of right quantizations."""
    return G.mul[np.asarray(tau)[G.inv], np.arange(G.order)]


def tau_hat(G: FiniteGroup, tau: TauMap) -> TauMap:
    """x -> x tau(x^-1), the left-side counterpart of ``tau_tilde``."""
    return G.mul[np.arange(G.order), np.asarray(tau)[G.inv]]


def tau_sample(G: FiniteGroup, rng: np.random.Generator) -> dict[str, TauMap]:
    """The five maps used by the suites: e, id, inverse and two random maps."""
    return {
        "e": tau_e(G),
        "id": tau_id(G),
        "inv": tau_inv(G),
        "random0": tau_random(G, rng),
        "random1": tau_random(G, rng),
    }
