"""Scalar quantization on simply connected nilpotent Lie groups.

Points are stored in exponential coordinates of the first kind, so ``exp``
and ``log`` are the identity on storage and the product is the
Baker-Campbell-Hausdorff series, which terminates for step <= 4.

Integrals are Riemann sums on uniform grids. The position grid on each
axis is ``-L + h*j`` for ``j = 0..N-1`` with ``h = 2L/N``; the frequency
grid is the matching DFT grid ``-pi/h + (2pi/(N h)) k``. The frequency
measure carries the factor ``(2pi)^-n``.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable

import numpy as np
from scipy.interpolate import RegularGridInterpolator

from .report import Report

MAX_STEP = 4
TAUS = ("0", "id", "sigma")


@dataclass(frozen=True, eq=False)
class NilpotentAlgebra:
    """Structure constants ``c[i, j, k]``: ``[e_i, e_j] = sum_k c[i,j,k] e_k``."""

    structure: np.ndarray
    name: str = ""

    def __post_init__(self):
        c = np.array(self.structure, dtype=float)
        if c.ndim != 3 or not (c.shape[0] == c.shape[1] == c.shape[2]):
            raise ValueError("structure constants must have shape (n, n, n)")
        c.setflags(write=False)
        object.__setattr__(self, "structure", c)
        i, j = np.triu_indices(len(c), 1)
        object.__setattr__(self, "_pairs", (i, j, c[i, j]))
        report = self.validate()
        if not report.passed:
            raise ValueError(f"invalid nilpotent algebra: {[ch.name for ch in report.failures]}")

    @property
    def dim(self) -> int:
        return self.structure.shape[0]

    def bracket(self, X, Y) -> np.ndarray:
        # pairwise antisymmetric form: [X, cX] is exactly zero for power-of-two c
        X, Y = np.asarray(X), np.asarray(Y)
        i, j, c = self._pairs
        minors = X[..., i] * Y[..., j] - X[..., j] * Y[..., i]
        return minors @ c

    def _central_series_ranks(self) -> list[int] | None:
        """Ranks of g, [g,g], [g,[g,g]], ... down to 0; None if the series stalls."""
        n = self.dim
        basis = np.eye(n)
        ranks = [n]
        while basis.shape[0]:
            spans = self.bracket(np.eye(n)[:, None, :], basis[None, :, :]).reshape(-1, n)
            basis = _row_basis(spans)
            if basis.shape[0] == ranks[-1]:
                return None
            ranks.append(basis.shape[0])
        return ranks

    @property
    def step(self) -> int:
        """Length of the lower central series (0 for the zero algebra)."""
        ranks = self._central_series_ranks()
        if ranks is None:
            raise ValueError("algebra is not nilpotent")
        return len(ranks) - 1 if self.dim else 0

    def validate(self) -> Report:
        rep = Report()
        c = self.structure
        rep.add("algebra.antisymmetry", np.max(np.abs(c + c.transpose(1, 0, 2)), initial=0.0), 1e-12)
        E = np.eye(self.dim)
        a, b, d = E[:, None, None, :], E[None, :, None, :], E[None, None, :, :]
        jac = (
            self.bracket(a, self.bracket(b, d))
            + self.bracket(b, self.bracket(d, a))
            + self.bracket(d, self.bracket(a, b))
        )
        rep.add("algebra.jacobi", np.max(np.abs(jac), initial=0.0), 1e-12)
        ranks = self._central_series_ranks()
        rep.add("algebra.nilpotent", 0 if ranks is not None else 1, 0)
        if ranks is not None:
            step = len(ranks) - 1
            rep.add("algebra.step", max(0, step - MAX_STEP), 0, detail=f"step={step}")
        return rep


def _row_basis(rows: np.ndarray, tol: float = 1e-10) -> np.ndarray:
    if rows.size == 0:
        return rows
    _, s, vt = np.linalg.svd(rows)
    return vt[: int(np.sum(s > tol))]


def _from_brackets(n: int, brackets: dict[tuple[int, int], dict[int, float]], name: str) -> NilpotentAlgebra:
    c = np.zeros((n, n, n))
    for (i, j), coeffs in brackets.items():
        for k, v in coeffs.items():
            c[i, j, k] += v
            c[j, i, k] -= v
    return NilpotentAlgebra(c, name)


def abelian_algebra(n: int) -> NilpotentAlgebra:
    return NilpotentAlgebra(np.zeros((n, n, n)), f"abelian:{n}")


def heisenberg_algebra(m: int = 1) -> NilpotentAlgebra:
    """Dimension 2m+1 with [e_i, e_{m+i}] = e_{2m}."""
    return _from_brackets(2 * m + 1, {(i, m + i): {2 * m: 1.0} for i in range(m)}, f"heisenberg:{m}")


def engel_algebra() -> NilpotentAlgebra:
    """Step 3: [e0,e1] = e2, [e0,e2] = e3."""
    return _from_brackets(4, {(0, 1): {2: 1.0}, (0, 2): {3: 1.0}}, "engel")


def filiform_algebra(n: int = 5) -> NilpotentAlgebra:
    """[e0, e_k] = e_{k+1} for 1 <= k < n-1; step n-1 (n <= 5 keeps step <= 4)."""
    return _from_brackets(n, {(0, k): {k + 1: 1.0} for k in range(1, n - 1)}, f"filiform:{n}")


ALGEBRAS: dict[str, Callable[..., NilpotentAlgebra]] = {
    "abelian": abelian_algebra,
    "heisenberg": heisenberg_algebra,
    "engel": lambda: engel_algebra(),
    "filiform": filiform_algebra,
}


def make_algebra(spec: str) -> NilpotentAlgebra:
    family, _, param = spec.partition(":")
    if family not in ALGEBRAS:
        raise ValueError(f"unknown algebra {family!r}; known: {sorted(ALGEBRAS)}")
    return ALGEBRAS[family](int(param)) if param else ALGEBRAS[family]()


# -- group law ----------------------------------------------------------------------

def bch(alg: NilpotentAlgebra, X, Y) -> np.ndarray:
    """Product exp(X) exp(Y) in exponential coordinates (exact for step <= 4)."""
    X, Y = np.broadcast_arrays(np.asarray(X, dtype=float), np.asarray(Y, dtype=float))
    br = alg.bracket
    XY = br(X, Y)
    XXY = br(X, XY)
    return X + Y + 0.5 * XY + (XXY + br(Y, br(Y, X))) / 12.0 - br(Y, XXY) / 24.0


def inverse(X) -> np.ndarray:
    return -np.asarray(X, dtype=float)


def sigma_half(X) -> np.ndarray:
    """exp(log(x) / 2)."""
    return 0.5 * np.asarray(X, dtype=float)


def heisenberg_matrix(X) -> np.ndarray:
    """3x3 nilpotent matrix of a point of H_3: a E12 + b E23 + c E13."""
    a, b, c = X
    return np.array([[0.0, a, c], [0.0, 0.0, b], [0.0, 0.0, 0.0]])


def _is_h3(alg: NilpotentAlgebra) -> bool:
    return alg.dim == 3 and np.array_equal(alg.structure, heisenberg_algebra(1).structure)


def sigma_midpoint_matrix(alg: NilpotentAlgebra, X) -> np.ndarray:
    """Coordinates of I + A/2 + A^2/6 (the integral of exp(sA) over [0,1]) in H_3."""
    if not _is_h3(alg):
        raise ValueError("matrix midpoint is only available for the 3-dimensional Heisenberg algebra")
    A = heisenberg_matrix(X)
    N = A / 2 + A @ A / 6
    L = N - N @ N / 2  # N^3 = 0
    return np.array([L[0, 1], L[1, 2], L[0, 2]])


def tau_map(alg: NilpotentAlgebra, name: str) -> Callable[[np.ndarray], np.ndarray]:
    if name in ("0", "e"):
        return lambda X: np.zeros_like(np.asarray(X, dtype=float))
    if name == "id":
        return lambda X: np.asarray(X, dtype=float)
    if name in ("sigma", "sigma_half"):
        return sigma_half
    if name == "sigma_matrix":
        return lambda X: np.apply_along_axis(lambda v: sigma_midpoint_matrix(alg, v), -1, np.asarray(X, dtype=float))
    raise ValueError(f"unsupported tau {name!r}; use one of {TAUS}")


# -- grids ------------------------------------------------------------------------------

@dataclass(frozen=True)
class Grid:
    dim: int
    half_width: float = 6.0
    points: int = 32

    def __post_init__(self):
        if self.points < 2 or self.points % 2:
            raise ValueError("grid needs an even number of points >= 2")
        if self.half_width <= 0 or self.dim < 1:
            raise ValueError("grid needs half_width > 0 and dim >= 1")

    @property
    def spacing(self) -> float:
        return 2 * self.half_width / self.points

    @property
    def dual_spacing(self) -> float:
        return np.pi / self.half_width

    @property
    def axis(self) -> np.ndarray:
        return -self.half_width + self.spacing * np.arange(self.points)

    @property
    def dual_axis(self) -> np.ndarray:
        return -np.pi / self.spacing + self.dual_spacing * np.arange(self.points)

    def _nodes(self, axis: np.ndarray) -> np.ndarray:
        mesh = np.meshgrid(*([axis] * self.dim), indexing="ij")
        return np.stack([m.ravel() for m in mesh], axis=-1)

    @property
    def nodes(self) -> np.ndarray:
        return self._nodes(self.axis)

    @property
    def dual_nodes(self) -> np.ndarray:
        return self._nodes(self.dual_axis)

    @property
    def cell(self) -> float:
        return self.spacing**self.dim

    @property
    def dual_cell(self) -> float:
        return (self.dual_spacing / (2 * np.pi)) ** self.dim

    @property
    def size(self) -> int:
        return self.points**self.dim


def fourier_matrix(grid: Grid, direction: str = "forward") -> np.ndarray:
    phase = grid.nodes @ grid.dual_nodes.T  # (x, X')
    if direction == "forward":
        return np.exp(-1j * phase.T) * grid.cell
    if direction == "inverse":
        return np.exp(1j * phase) * grid.dual_cell
    raise ValueError(f"direction must be forward or inverse, got {direction!r}")


def grid_fourier(grid: Grid, values, direction: str = "forward") -> np.ndarray:
    """Riemann-sum Fourier transform between position and frequency grids."""
    values = np.asarray(values, dtype=complex)
    if values.shape[0] != grid.size:
        raise ValueError(f"expected {grid.size} samples, got {values.shape[0]}")
    return fourier_matrix(grid, direction) @ values


def character(X_dual, x) -> np.ndarray:
    """Unitary character of the vector group: x -> exp(i <log x | X'>)."""
    return np.exp(1j * np.tensordot(np.asarray(x), np.asarray(X_dual), axes=([-1], [-1])))


def group_fourier(alg: NilpotentAlgebra, grid: Grid, values, direction: str = "forward") -> np.ndarray:
    """Fourier transform over the unitary dual of an Abelian group, by characters."""
    if np.any(alg.structure):
        raise ValueError("group Fourier transform by characters needs an Abelian algebra")
    chi = character(grid.dual_nodes, grid.nodes)  # (x, X')
    values = np.asarray(values, dtype=complex)
    if direction == "forward":
        return chi.conj().T @ values * grid.cell
    return chi @ values * grid.dual_cell


# -- scalar symbols and quantization ------------------------------------------------------

@dataclass(frozen=True, eq=False)
class ScalarSymbol:
    """s(x, X'): either a vectorized callable or samples on ``nodes x dual_nodes``.

    Sampled symbols are linearly interpolated in x when evaluated off the grid.
    """

    grid: Grid
    func: Callable[[np.ndarray, np.ndarray], np.ndarray] | None = None
    values: np.ndarray | None = None

    def __post_init__(self):
        if (self.func is None) == (self.values is None):
            raise ValueError("give exactly one of func or values")
        if self.values is not None:
            v = np.asarray(self.values, dtype=complex)
            if v.shape != (self.grid.size, self.grid.size):
                raise ValueError(f"sampled symbol must have shape {(self.grid.size,) * 2}")
            object.__setattr__(self, "values", v)

    def evaluate(self, points: np.ndarray) -> np.ndarray:
        """Values at arbitrary positions (rows of ``points``) for every dual node."""
        points = np.asarray(points, dtype=float)
        if self.func is not None:
            out = self.func(points[:, None, :], self.grid.dual_nodes[None, :, :])
            return np.broadcast_to(out, (len(points), self.grid.size)).astype(complex)
        g = self.grid
        shape = (g.points,) * g.dim + (g.size,)
        interp = RegularGridInterpolator(
            (g.axis,) * g.dim, self.values.reshape(shape), bounds_error=False, fill_value=None
        )
        return interp(points)

    def sampled(self) -> np.ndarray:
        return self.values if self.values is not None else self.evaluate(self.grid.nodes)


def _kernel_points(alg, side, tau, x, Y):
    """Returns (log of the difference element, base point) for row x against all y."""
    t = tau_map(alg, tau)
    xs = np.broadcast_to(x, Y.shape)
    if side == "L":
        Z = bch(alg, xs, inverse(Y))  # x y^-1
        P = bch(alg, inverse(t(Z)), xs)  # τ(z)^-1 x
    else:
        Z = bch(alg, inverse(Y), xs)  # y^-1 x
        P = bch(alg, xs, inverse(t(Z)))  # x τ(z)^-1
    return Z, P


def scalar_kernel(alg: NilpotentAlgebra, grid: Grid, side: str, tau: str, s: ScalarSymbol) -> np.ndarray:
    """K(x, y) = ∫ exp(i <log(z) | X'>) s(p, X') dX' on the grid.

    Left: z = x y^-1, p = τ(z)^-1 x.  Right: z = y^-1 x, p = x τ(z)^-1.
    """
    side = side.upper()[:1]
    if side not in ("L", "R"):
        raise ValueError(f"side must be L or R, got {side!r}")
    if grid.dim != alg.dim:
        raise ValueError("grid and algebra dimensions differ")
    tau_map(alg, tau)  # reject unsupported maps early
    nodes, dual = grid.nodes, grid.dual_nodes
    K = np.empty((grid.size, grid.size), dtype=complex)
    for j, x in enumerate(nodes):
        Z, P = _kernel_points(alg, side, tau, x, nodes)
        E = np.exp(1j * (Z @ dual.T))
        K[j] = np.sum(E * s.evaluate(P), axis=1)
    return K * grid.dual_cell


def scalar_op(alg, grid: Grid, side: str, tau: str, s: ScalarSymbol, u=None) -> np.ndarray:
    """Operator matrix on grid samples (quadrature weight included), or its action on ``u``."""
    T = scalar_kernel(alg, grid, side, tau, s) * grid.cell
    return T if u is None else T @ np.asarray(u, dtype=complex)


# -- Weyl phases -----------------------------------------------------------------------------

def weyl_phase(alg, tau: str, x, X_dual, z) -> complex:
    """Phase of [W(x,X') u](z) = exp(i <log(τ(x)^-1 z) | X'>) u(x^-1 z)."""
    t = tau_map(alg, tau)
    return np.exp(1j * np.dot(bch(alg, inverse(t(x)), z), X_dual))


def upsilon(alg, tau: str, x, X_dual, y, Y_dual, z) -> complex:
    t = tau_map(alg, tau)
    xy = bch(alg, x, y)
    l1 = bch(alg, inverse(t(x)), z)
    l2 = bch(alg, inverse(t(xy)), z)
    l3 = bch(alg, bch(alg, t(inverse(y)), inverse(x)), z)
    return np.exp(1j * (np.dot(l1 - l2, X_dual) - np.dot(l2 - l3, Y_dual)))


def cocycle_residual(alg, tau: str, x, X_dual, y, Y_dual, z) -> float:
    """|W(x,X')W(y,Y') - Υ W(xy, X'+Y')| at the point z (phases only; translations agree)."""
    lhs = weyl_phase(alg, tau, x, X_dual, z) * weyl_phase(alg, tau, y, Y_dual, bch(alg, inverse(x), z))
    rhs = upsilon(alg, tau, x, X_dual, y, Y_dual, z) * weyl_phase(
        alg, tau, bch(alg, x, y), np.asarray(X_dual) + np.asarray(Y_dual), z
    )
    return float(abs(lhs - rhs))


# -- Euclidean consistency -------------------------------------------------------------------

_T_OF = {"0": 0.0, "e": 0.0, "id": 1.0, "sigma": 0.5, "sigma_half": 0.5}


def classical_kernel(grid: Grid, t: float, s: ScalarSymbol) -> np.ndarray:
    """Textbook t-quantization kernel on R^n: ∫ e^{i(x-y)X'} s((1-t)x + t y, X') dX'."""
    x = grid.nodes
    dual = grid.dual_nodes
    K = np.empty((grid.size, grid.size), dtype=complex)
    for j in range(grid.size):
        diff = x[j] - x
        pts = (1 - t) * x[j] + t * x
        K[j] = np.sum(np.exp(1j * diff @ dual.T) * s.evaluate(pts), axis=1)
    return K * grid.dual_cell


def rn_consistency(n: int, tau: str, grid: Grid | None = None, seed: int = 0) -> Report:
    """Compare the scalar calculus on R^n with the classical t-quantization."""
    if tau not in _T_OF:
        raise ValueError(f"unsupported tau {tau!r}")
    grid = grid or Grid(n, 6.0, 32 if n == 1 else 8)
    alg = abelian_algebra(n)
    rng = np.random.default_rng(seed)
    coef = rng.standard_normal((3, n))
    rep = Report()

    def smooth(x, X):
        return np.exp(-np.sum(x**2, -1) / 8) * np.cos(np.sum(coef[0] * X, -1)) + np.sum(coef[1] * x * X, -1) * np.exp(
            -np.sum(X**2, -1) / 4
        )

    s = ScalarSymbol(grid, func=smooth)
    K = scalar_kernel(alg, grid, "L", tau, s)
    rep.add("rn.kernel_vs_classical", np.max(np.abs(K - classical_kernel(grid, _T_OF[tau], s))), 1e-10)
    rep.add("rn.left_equals_right", np.max(np.abs(K - scalar_kernel(alg, grid, "R", tau, s))), 1e-10)

    def m(x, X):
        return np.exp(-np.sum(X**2, -1) / 2) + 1j * np.sum(coef[2] * X, -1) / (1 + np.sum(X**2, -1))

    T = scalar_op(alg, grid, "L", tau, ScalarSymbol(grid, func=m))
    dft = fourier_matrix(grid, "inverse") @ np.diag(m(None, grid.dual_nodes)) @ fourier_matrix(grid, "forward")
    rep.add("rn.multiplier", np.max(np.abs(T - dft)), 1e-8)
    if _T_OF[tau] == 0.5:

        def real_symbol(x, X):
            return np.sum(x * X, -1) + np.cos(np.sum(coef[0] * x, -1)) * np.exp(-np.sum(X**2, -1) / 4)

        Kw = scalar_kernel(alg, grid, "L", tau, ScalarSymbol(grid, func=real_symbol))
        rep.add("rn.weyl_hermitian", np.max(np.abs(Kw - Kw.conj().T)), 1e-8)
    # Lie-algebra transform composed with exp, against the character transform
    bold = fourier_matrix(grid, "forward")
    chi_inv = np.stack([group_fourier(alg, grid, e, "inverse") for e in np.eye(grid.size)], axis=1)
    rep.add("rn.fourier_coincide", np.max(np.abs(bold @ chi_inv - np.eye(grid.size))), 1e-8)
    return rep


def multiplier_error(points: int, half_width: float = 24.0) -> float:
    """Error of the quantized multiplier 1/(1+X'^2) applied to e^{-|x|}.

    The exact answer is (1+|x|) e^{-|x|} / 2; the kink of e^{-|x|} at 0 keeps
    the Riemann sums from converging spectrally.
    """
    grid = Grid(1, half_width, points)
    alg = abelian_algebra(1)
    s = ScalarSymbol(grid, func=lambda x, X: 1.0 / (1.0 + X[..., 0] ** 2))
    x = grid.nodes[:, 0]
    out = scalar_op(alg, grid, "L", "0", s, np.exp(-np.abs(x)))
    exact = (1 + np.abs(x)) * np.exp(-np.abs(x)) / 2
    return float(np.max(np.abs(out - exact)))
