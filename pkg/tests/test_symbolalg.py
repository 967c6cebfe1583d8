import itertools

import numpy as np
import pytest
from hypothesis import given, strategies as st

from ncq.groups import make_group, tau_hat, tau_sample, tau_tilde
from ncq.harmonic import identity_symbol, mixed_inner, norm, random_symbol, symbol_distance
from ncq.quantize import op_from_symbol
from ncq.symbolalg import (
    adjoint_symbol,
    central_extension,
    check_cocycle,
    compose,
    convert_tau,
    involute,
    is_symmetry_function,
    pointwise_adjoint,
    symmetry_central_extension,
    symmetry_odd_power,
    symmetry_product,
    symmetry_search,
)

from conftest import SMALL, group

seeds = st.integers(0, 2**32 - 1)
specs = st.sampled_from(SMALL + ("heisenberg:3",))
sides = st.sampled_from(["R", "L"])


def _setup(spec, seed, which="random0"):
    G, D = group(spec)
    rng = np.random.default_rng(seed)
    return G, D, tau_sample(G, rng)[which], rng


@given(specs, seeds, sides)
def test_composition_realizes_operator_product(spec, seed, side):
    G, D, tau, rng = _setup(spec, seed)
    a, b = random_symbol(D, rng), random_symbol(D, rng)
    A, B = op_from_symbol(G, D, tau, a, side), op_from_symbol(G, D, tau, b, side)
    assert np.allclose(op_from_symbol(G, D, tau, compose(G, D, tau, a, b, side), side), A @ B, atol=1e-11)
    assert np.allclose(op_from_symbol(G, D, tau, involute(G, D, tau, a, side), side), A.conj().T, atol=1e-12)


@given(specs, seeds, sides)
def test_star_algebra_laws(spec, seed, side):
    G, D, tau, rng = _setup(spec, seed, "random1")
    a, b, c = (random_symbol(D, rng) for _ in range(3))
    comp = lambda x, y: compose(G, D, tau, x, y, side)  # noqa: E731
    star = lambda x: involute(G, D, tau, x, side)  # noqa: E731
    assert symbol_distance(comp(comp(a, b), c), comp(a, comp(b, c))) < 1e-10
    assert symbol_distance(star(comp(a, b)), comp(star(b), star(a))) < 1e-10
    assert symbol_distance(star(star(a)), a) < 1e-12
    assert symbol_distance(comp(identity_symbol(D), a), a) < 1e-12


@given(specs, seeds, sides)
def test_hilbert_algebra_pairings(spec, seed, side):
    G, D, tau, rng = _setup(spec, seed)
    a, b, c = (random_symbol(D, rng) for _ in range(3))
    comp = lambda x, y: compose(G, D, tau, x, y, side)  # noqa: E731
    star = lambda x: involute(G, D, tau, x, side)  # noqa: E731
    lhs = mixed_inner(D, comp(a, b), c)
    assert lhs == pytest.approx(mixed_inner(D, b, comp(star(a), c)), abs=1e-9)
    assert lhs == pytest.approx(mixed_inner(D, a, comp(c, star(b))), abs=1e-9)
    assert mixed_inner(D, a, b) == pytest.approx(mixed_inner(D, star(b), star(a)), abs=1e-9)


def test_literal_right_pairing_fails_on_s3():
    # <a#b, c> = <a, b^# # c> would say Tr(ABC*) = Tr(AC*B); false for noncommuting operators
    G, D = group("symmetric:3")
    rng = np.random.default_rng(2024)
    tau = tau_sample(G, rng)["e"]
    a, b, c = (random_symbol(D, rng) for _ in range(3))
    lhs = mixed_inner(D, compose(G, D, tau, a, b), c)
    literal = mixed_inner(D, a, compose(G, D, tau, involute(G, D, tau, b), c))
    assert abs(lhs - literal) > 1.0


@given(specs, seeds, sides)
def test_tau_conversion(spec, seed, side):
    G, D, tau, rng = _setup(spec, seed)
    tau2 = tau_sample(G, rng)["random1"]
    a = random_symbol(D, rng)
    b = convert_tau(G, D, tau, tau2, a, side)
    assert np.allclose(op_from_symbol(G, D, tau, b, side), op_from_symbol(G, D, tau2, a, side), atol=1e-12)
    assert symbol_distance(convert_tau(G, D, tau2, tau, b, side), a) < 1e-12
    assert symbol_distance(convert_tau(G, D, tau, tau, a, side), a) < 1e-12


@given(specs, seeds, sides)
def test_adjoint_law(spec, seed, side):
    G, D, tau, rng = _setup(spec, seed)
    a = random_symbol(D, rng)
    tau2, astar = adjoint_symbol(G, tau, a, side)
    assert np.array_equal(tau2, tau_tilde(G, tau) if side == "R" else tau_hat(G, tau))
    assert symbol_distance(astar, pointwise_adjoint(a)) == 0
    assert np.allclose(op_from_symbol(G, D, tau, a, side).conj().T, op_from_symbol(G, D, tau2, astar, side), atol=1e-12)


def brute_force_symmetry_count(G, side):
    count = 0
    for sigma in itertools.product(range(G.order), repeat=G.order):
        sigma = np.array(sigma)
        other = G.mul[sigma[G.inv], np.arange(G.order)] if side == "R" else G.mul[np.arange(G.order), sigma[G.inv]]
        count += np.array_equal(sigma, other)
    return count


@pytest.mark.parametrize("spec", ["cyclic:1", "cyclic:2", "cyclic:3", "cyclic:4", "cyclic:5", "symmetric:3"])
@pytest.mark.parametrize("side", ["R", "L"])
def test_search_matches_raw_enumeration(spec, side):
    G, _ = group(spec)
    res = symmetry_search(G, side, limit=10**6)
    assert res.count == brute_force_symmetry_count(G, side)
    assert all(is_symmetry_function(G, s, side) for s in res.witnesses)


@pytest.mark.parametrize(
    "spec,count", [("cyclic:1", 1), ("cyclic:3", 9), ("cyclic:5", 125), ("cyclic:2", 0), ("symmetric:3", 0), ("quaternion8", 0)]
)
def test_frozen_symmetry_counts(spec, count):
    G, _ = group(spec)
    res = symmetry_search(G, "R", limit=10**6)
    assert res.count == count and res.exists == (count > 0)


def test_search_truncates():
    G, _ = group("cyclic:9")
    res = symmetry_search(G, "R", limit=50)
    assert res.exists and res.count == "truncated" and len(res.witnesses) == 50


@pytest.mark.parametrize("spec", ["cyclic:1", "cyclic:3", "cyclic:7", "cyclic:9", "cyclic:3xcyclic:3", "heisenberg:3"])
def test_odd_power_is_two_sided(spec):
    G, _ = group(spec)
    sigma = symmetry_odd_power(G)
    assert is_symmetry_function(G, sigma, "R") and is_symmetry_function(G, sigma, "L")


def test_odd_power_rejects_even_order():
    with pytest.raises(ValueError):
        symmetry_odd_power(group("cyclic:4")[0])


@pytest.mark.parametrize("side", ["R", "L"])
def test_product_symmetry(side):
    G1, _ = group("cyclic:3")
    G2, _ = group("cyclic:5")
    G, _ = make_group("cyclic:3xcyclic:5")
    sigma = symmetry_product(G1, G2, symmetry_odd_power(G1), symmetry_odd_power(G2), side)
    assert is_symmetry_function(G, sigma, side)


def _heisenberg_cocycle(p):
    return np.array([[(h1 // p) * (h2 % p) % p for h2 in range(p * p)] for h1 in range(p * p)])


def test_central_extension_reproduces_heisenberg_table():
    H, _ = group("cyclic:3xcyclic:3")
    N, _ = group("cyclic:3")
    G = central_extension(H, N, _heisenberg_cocycle(3))
    assert np.array_equal(G.mul, group("heisenberg:3")[0].mul)


@pytest.mark.parametrize("side", ["R", "L"])
def test_central_extension_symmetry(side):
    H, _ = group("cyclic:3xcyclic:3")
    N, _ = group("cyclic:3")
    G, sigma = symmetry_central_extension(H, N, _heisenberg_cocycle(3), symmetry_odd_power(H), symmetry_odd_power(N), side)
    assert is_symmetry_function(G, sigma, side)
    # a valid witness that differs from the odd power: symmetry functions are not unique
    assert not np.array_equal(sigma, symmetry_odd_power(G))


def test_bad_cocycle_rejected():
    H, _ = group("cyclic:3")
    N, _ = group("cyclic:3")
    coc = np.zeros((3, 3), dtype=int)
    coc[1, 2] = 1
    with pytest.raises(ValueError):
        check_cocycle(H, N, coc)


@pytest.mark.parametrize("spec", ["cyclic:5", "cyclic:3xcyclic:3", "heisenberg:3"])
@pytest.mark.parametrize("side", ["R", "L"])
def test_symmetric_quantization_is_hermitian(spec, side):
    G, D = group(spec)
    sigma = symmetry_odd_power(G)
    a = random_symbol(D, np.random.default_rng(9))
    h = [(x + np.conj(np.swapaxes(x, -1, -2))) / 2 for x in a]
    T = op_from_symbol(G, D, sigma, h, side)
    assert np.max(np.abs(T - T.conj().T)) < 1e-12
    # and a non-symmetric tau generally is not
    T0 = op_from_symbol(G, D, np.zeros(G.order, dtype=np.intp), h, side)
    assert np.max(np.abs(T0 - T0.conj().T)) > 1e-3


def test_composition_rejects_mismatched_shapes():
    G, D = group("symmetric:3")
    a = random_symbol(D, np.random.default_rng(0))
    with pytest.raises(ValueError):
        compose(G, D, np.zeros(6, dtype=np.intp), a, a[:-1])


def test_norms_are_consistent_for_conversion():
    G, D = group("quaternion8")
    rng = np.random.default_rng(4)
    a = random_symbol(D, rng)
    b = convert_tau(G, D, tau_sample(G, rng)["e"], tau_sample(G, rng)["id"], a)
    assert norm("B2_gamma", b, D) == pytest.approx(norm("B2_gamma", a, D))
