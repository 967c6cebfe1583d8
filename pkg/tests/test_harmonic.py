import numpy as np
import pytest
from hypothesis import given, strategies as st

from ncq.harmonic import (
    dual_side_to_symbol,
    fourier,
    identity_symbol,
    inverse_fourier,
    mixed_inner,
    norm,
    partial_fourier,
    random_field,
    random_function,
    random_symbol,
    schatten,
    symbol_distance,
    symbol_to_dual_side,
)

from conftest import SMALL, group

seeds = st.integers(0, 2**32 - 1)
specs = st.sampled_from(SMALL + ("heisenberg:3", "symmetric:4"))


@given(specs, seeds)
def test_plancherel_and_inversion(spec, seed):
    G, D = group(spec)
    u = random_function(G.order, np.random.default_rng(seed))
    assert norm("B2_dual", fourier(D, u), D) ** 2 == pytest.approx(np.vdot(u, u).real, rel=1e-12)
    assert np.allclose(inverse_fourier(D, fourier(D, u)), u, atol=1e-13)


@given(specs, seeds)
def test_forward_after_inverse_is_identity(spec, seed):
    G, D = group(spec)
    phi = random_field(D, np.random.default_rng(seed))
    back = fourier(D, inverse_fourier(D, phi))
    assert max(np.max(np.abs(a - b)) for a, b in zip(back, phi)) < 1e-12


@pytest.mark.parametrize("n", [1, 4, 7, 9])
def test_cyclic_transform_matches_fft(n):
    G, D = group(f"cyclic:{n}")
    u = random_function(n, np.random.default_rng(n))
    fft = np.fft.fft(u)
    got = {r.label: f[0, 0] for r, f in zip(D, fourier(D, u))}
    for label, value in got.items():
        assert value == pytest.approx(fft[int(label[3:])], abs=1e-12)


def test_delta_at_identity_transforms_to_identity():
    G, D = group("symmetric:3")
    delta = np.zeros(G.order)
    delta[0] = 1
    for f, d in zip(fourier(D, delta), D.dims):
        assert np.allclose(f, np.eye(d))


@given(specs, seeds)
def test_partial_transforms_invert(spec, seed):
    G, D = group(spec)
    rng = np.random.default_rng(seed)
    a = random_symbol(D, rng)
    assert symbol_distance(dual_side_to_symbol(D, symbol_to_dual_side(D, a)), a) < 1e-12
    K = rng.standard_normal((G.order, G.order)) + 0j
    for axis in ("first", "second"):
        fwd = partial_fourier(D, K, axis, "forward")
        assert np.allclose(partial_fourier(D, fwd, axis, "inverse"), K, atol=1e-12)


def test_mixed_inner_matches_norm():
    _, D = group("dihedral:4")
    a = random_symbol(D, np.random.default_rng(1))
    assert mixed_inner(D, a, a).real == pytest.approx(norm("B2_gamma", a, D) ** 2)


def test_identity_symbol_shape():
    G, D = group("quaternion8")
    ident = identity_symbol(D)
    assert [x.shape for x in ident] == [(G.order, d, d) for d in D.dims]


@given(seeds)
def test_schatten_matches_numpy(seed):
    M = np.random.default_rng(seed).standard_normal((5, 5)) + 1j
    assert schatten(M, 2) == pytest.approx(np.linalg.norm(M, "fro"))
    assert schatten(M, np.inf) == pytest.approx(np.linalg.norm(M, 2))
    assert schatten(M, 1) == pytest.approx(np.linalg.norm(M, "nuc"))


@given(seeds, st.floats(1.0, 8.0))
def test_schatten_monotone_in_p(seed, p):
    M = np.random.default_rng(seed).standard_normal((4, 4))
    assert schatten(M, p + 1) <= schatten(M, p) + 1e-12


def test_schatten_of_singular_values_small():
    # SVD keeps tiny singular values that an eigen-decomposition of M*M loses
    M = np.diag([1.0, 1e-10])
    assert schatten(M, 1) == pytest.approx(1.0 + 1e-10, rel=1e-15)


@pytest.mark.parametrize("p", [0.5, -1.0, 0.0])
def test_norm_rejects_bad_p(p):
    _, D = group("cyclic:3")
    with pytest.raises(ValueError):
        norm("Bp_dual", random_field(D, np.random.default_rng(0)), D, p)


def test_norm_rejects_unknown_space():
    with pytest.raises(ValueError):
        norm("nope", np.zeros(3))
