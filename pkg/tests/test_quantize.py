import numpy as np
import pytest
from hypothesis import given, strategies as st

from ncq.groups import tau_e, tau_id, tau_sample
from ncq.harmonic import (
    dual_side_to_symbol,
    identity_symbol,
    mixed_inner,
    norm,
    random_function,
    random_symbol,
    symbol_distance,
    symbol_to_dual_side,
)
from ncq.quantize import (
    cv,
    fourier_wigner,
    fourier_wigner_weyl,
    left_translation,
    op_from_symbol,
    operator_metrics,
    po,
    po_weyl,
    rank_one,
    right_translation,
    symbol_from_kernel,
    weyl,
    wigner,
)

from conftest import NONABELIAN, SMALL, group

seeds = st.integers(0, 2**32 - 1)
specs = st.sampled_from(SMALL + ("heisenberg:3",))
sides = st.sampled_from(["R", "L"])


def brute_kernel(G, D, tau, a, side):
    """Kernel from the defining double sum, one entry at a time."""
    n = G.order
    K = np.zeros((n, n), dtype=complex)
    for x in range(n):
        for y in range(n):
            if side == "R":
                z = G.mul[G.inv[y], x]
                p = G.mul[x, G.inv[tau[z]]]
            else:
                z = G.mul[x, G.inv[y]]
                p = G.mul[G.inv[tau[z]], x]
            for k, r in enumerate(D):
                K[x, y] += D.weights[k] * np.trace(r.matrices[z] @ a[k][p])
    return K


@pytest.mark.parametrize("spec", ["symmetric:3", "quaternion8", "cyclic:5"])
@pytest.mark.parametrize("side", ["R", "L"])
def test_operator_matches_brute_force_sum(spec, side):
    G, D = group(spec)
    rng = np.random.default_rng(7)
    for tau in tau_sample(G, rng).values():
        a = random_symbol(D, rng)
        assert np.allclose(op_from_symbol(G, D, tau, a, side), brute_kernel(G, D, tau, a, side), atol=1e-13)


@given(specs, seeds, sides)
def test_change_of_variables_is_bijective(spec, seed, side):
    G, _ = group(spec)
    tau = tau_sample(G, np.random.default_rng(seed))["random0"]
    x, y = np.meshgrid(np.arange(G.order), np.arange(G.order), indexing="ij")
    p, z = cv(G, tau, side, "forward", x, y)
    assert len({(int(a), int(b)) for a, b in zip(p.ravel(), z.ravel())}) == G.order**2
    x2, y2 = cv(G, tau, side, "inverse", p, z)
    assert np.array_equal(x2, x) and np.array_equal(y2, y)


@given(specs, seeds, sides)
def test_hilbert_schmidt_isometry(spec, seed, side):
    G, D = group(spec)
    rng = np.random.default_rng(seed)
    tau = tau_sample(G, rng)["random1"]
    a, b = random_symbol(D, rng), random_symbol(D, rng)
    A, B = op_from_symbol(G, D, tau, a, side), op_from_symbol(G, D, tau, b, side)
    assert np.linalg.norm(A) == pytest.approx(norm("B2_gamma", a, D), rel=1e-12)
    assert np.trace(A @ B.conj().T) == pytest.approx(mixed_inner(D, a, b), abs=1e-10)


@given(specs, seeds, sides)
def test_symbol_round_trip(spec, seed, side):
    G, D = group(spec)
    rng = np.random.default_rng(seed)
    tau = tau_sample(G, rng)["random0"]
    a = random_symbol(D, rng)
    assert symbol_distance(symbol_from_kernel(G, D, tau, op_from_symbol(G, D, tau, a, side), side), a) < 1e-12


@pytest.mark.parametrize("spec", SMALL)
def test_identity_symbol_gives_identity(spec):
    G, D = group(spec)
    for tau in tau_sample(G, np.random.default_rng(0)).values():
        for side in "RL":
            assert np.allclose(op_from_symbol(G, D, tau, identity_symbol(D), side), np.eye(G.order))


def test_multiplication_symbol_gives_multiplication_operator():
    G, D = group("dihedral:4")
    f = random_function(G.order, np.random.default_rng(3))
    a = [f[:, None, None] * e for e in identity_symbol(D)]
    # a(x, ξ) = f(x) I; kernel concentrates at z = e where p = x τ(e)^-1 = x
    for tau in (tau_e(G), tau_id(G)):
        assert np.allclose(op_from_symbol(G, D, tau, a, "R"), np.diag(f))


def test_translations_are_permutations():
    G, _ = group("symmetric:3")
    v = random_function(G.order, np.random.default_rng(0))
    for z in range(G.order):
        assert np.allclose(left_translation(G, z) @ v, v[G.mul[G.inv[z]]])
        assert np.allclose(right_translation(G, z) @ v, v[G.mul[:, z]])


@pytest.mark.parametrize("spec", ["symmetric:3", "heisenberg:3"])
@pytest.mark.parametrize("side", ["R", "L"])
def test_weyl_operators_unitary(spec, side):
    G, D = group(spec)
    tau = tau_sample(G, np.random.default_rng(1))["random0"]
    for k, d in enumerate(D.dims):
        for x in range(G.order):
            W = weyl(G, D, tau, k, x, side)
            assert np.allclose(W.conj().T @ W, np.eye(G.order * d), atol=1e-12)


def test_weyl_trivial_irrep_is_translation():
    G, D = group("dihedral:4")
    tau = tau_sample(G, np.random.default_rng(2))["random1"]
    for x in range(G.order):
        assert np.array_equal(weyl(G, D, tau, D.trivial_index, x, "R"), right_translation(G, G.inv[x]))


@given(specs, seeds, sides)
def test_wigner_is_partial_transform_of_fourier_wigner(spec, seed, side):
    G, D = group(spec)
    rng = np.random.default_rng(seed)
    tau = tau_sample(G, rng)["random0"]
    u, v = random_function(G.order, rng), random_function(G.order, rng)
    fw = fourier_wigner(G, D, tau, u, v, side)
    assert symbol_distance(fw, fourier_wigner_weyl(G, D, tau, u, v, side)) < 1e-11
    assert symbol_distance(dual_side_to_symbol(D, fw), wigner(G, D, tau, u, v, side)) < 1e-11


@given(specs, seeds, sides)
def test_rank_one_operator_from_wigner(spec, seed, side):
    G, D = group(spec)
    rng = np.random.default_rng(seed)
    tau = tau_sample(G, rng)["random1"]
    u, v = random_function(G.order, rng), random_function(G.order, rng)
    T = op_from_symbol(G, D, tau, wigner(G, D, tau, u, v, side), side)
    assert np.allclose(T, rank_one(u, v), atol=1e-11)
    w = random_function(G.order, rng)
    assert np.allclose(T @ w, np.vdot(u, w) * v)


def test_swapped_wigner_subscripts_are_not_the_partial_transform():
    # documents the subscript order: the swapped pair differs by O(1)
    G, D = group("symmetric:3")
    rng = np.random.default_rng(5)
    tau = tau_e(G)
    u, v = random_function(G.order, rng), random_function(G.order, rng)
    swapped = dual_side_to_symbol(D, fourier_wigner(G, D, tau, v, u))
    assert symbol_distance(swapped, wigner(G, D, tau, u, v)) > 0.1


@given(specs, seeds, sides)
def test_po_two_routes_agree(spec, seed, side):
    G, D = group(spec)
    rng = np.random.default_rng(seed)
    tau = tau_sample(G, rng)["random0"]
    frak = random_symbol(D, rng)
    assert np.allclose(po(G, D, tau, frak, side), po_weyl(G, D, tau, frak, side), atol=1e-11)
    a = random_symbol(D, rng)
    assert np.allclose(po(G, D, tau, symbol_to_dual_side(D, a), side), op_from_symbol(G, D, tau, a, side), atol=1e-11)


@pytest.mark.parametrize("spec", NONABELIAN)
def test_left_and_right_differ_on_nonabelian(spec):
    G, D = group(spec)
    a = random_symbol(D, np.random.default_rng(0))
    for tau in tau_sample(G, np.random.default_rng(0)).values():
        gap = np.linalg.norm(op_from_symbol(G, D, tau, a, "R") - op_from_symbol(G, D, tau, a, "L"), 2)
        assert gap > 0.1


@pytest.mark.parametrize("spec", ["cyclic:6", "cyclic:3xcyclic:3", "cyclic:2xcyclic:2"])
def test_left_and_right_coincide_on_abelian(spec):
    G, D = group(spec)
    rng = np.random.default_rng(0)
    for tau in tau_sample(G, rng).values():
        a = random_symbol(D, rng)
        assert np.array_equal(op_from_symbol(G, D, tau, a, "R"), op_from_symbol(G, D, tau, a, "L"))


def test_operator_metrics_of_known_matrix():
    m = operator_metrics(np.diag([3.0, -4.0]))
    assert m == pytest.approx({"hs_norm": 5.0, "operator_norm": 4.0, "spectral_radius": 4.0})


def test_bad_side_rejected():
    G, D = group("cyclic:3")
    with pytest.raises(ValueError):
        op_from_symbol(G, D, tau_e(G), identity_symbol(D), "up")
