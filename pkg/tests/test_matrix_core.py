from __future__ import annotations

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from cliffps import matrix_core as mc
from cliffps.clifford_rep import SIGMA_X, SIGMA_Y, SIGMA_Z
from cliffps.config import DEFAULT, DimensionError, NotHermitianError, ValidationError

import oracles


def rand_herm(rng, n):
    m = rng.normal(size=(n, n)) + 1j * rng.normal(size=(n, n))
    return (m + m.conj().T) / 2


def test_eig_diagonal_and_pauli():
    assert np.allclose(mc.eig_hermitian(np.diag([3.0, -2.0])).values, [-2, 3])
    assert np.allclose(mc.eig_hermitian(SIGMA_X).values, [-1, 1])


def test_eig_matches_inertia_oracle(rng):
    m = rand_herm(rng, 8)
    w, v = mc.eig_hermitian(m)
    assert np.all(np.diff(w) >= 0)
    assert abs(w[0] - oracles.smallest_eigenvalue(m)) < 1e-10
    for k in range(8):
        # count of eigenvalues below a point just above w[k] reaches k + 1
        assert oracles.count_below(m, w[k] + 1e-9) >= k + 1
    norm = np.linalg.norm(m, 2)
    assert np.max(np.linalg.norm(m @ v - v * w, axis=0)) <= DEFAULT.eig_tol * norm
    assert np.allclose(v.conj().T @ v, np.eye(8), atol=DEFAULT.eig_tol)


def test_eig_rejects_non_hermitian():
    with pytest.raises(NotHermitianError) as info:
        mc.eig_hermitian(np.array([[0, 1], [0, 0]]))
    assert info.value.violation == pytest.approx(1.0)


def test_as_matrix_rejects_bad_input():
    with pytest.raises(ValidationError):
        mc.as_matrix([[np.nan]])
    with pytest.raises(DimensionError):
        mc.as_matrix(np.zeros((0, 3)))


def test_smin_examples():
    assert mc.smallest_singular_value(np.diag([3.0, -2.0])) == pytest.approx(2.0)
    n = 6
    inj = np.eye(n + 1, n, k=-1)
    assert mc.smallest_singular_value(inj) == pytest.approx(1.0)
    assert mc.smallest_singular_value(np.eye(n, k=-1)) == pytest.approx(0.0, abs=1e-15)
    assert mc.smallest_singular_value(inj.T) == 0.0


def test_smin_matches_dilation_oracle(rng):
    for n in (2, 5, 9):
        t = rng.normal(size=(n, n)) + 1j * rng.normal(size=(n, n))
        s = mc.smallest_singular_value(t)
        assert s == pytest.approx(oracles.smallest_singular_value(t), rel=1e-9)
        assert s <= oracles.random_upper_bound(t, rng) + 1e-12
        assert s == pytest.approx(mc.smallest_singular_value_normal(t), rel=1e-6)


def test_smin_lipschitz_and_submultiplicative(rng):
    for _ in range(50):
        s = rng.normal(size=(4, 4)) + 1j * rng.normal(size=(4, 4))
        t = s + 0.1 * rng.normal(size=(4, 4))
        gap = abs(mc.smallest_singular_value(s) - mc.smallest_singular_value(t))
        assert gap <= np.linalg.norm(s - t, 2) + 2 * DEFAULT.eig_tol
        lhs = mc.smallest_singular_value(s @ t)
        assert lhs >= mc.smallest_singular_value(s) * mc.smallest_singular_value(t) - 1e-10


def test_smin_hermitian_is_min_abs_eig(rng):
    m = rand_herm(rng, 7)
    assert mc.smallest_singular_value(m) == pytest.approx(np.min(np.abs(np.linalg.eigvalsh(m))), abs=1e-12)


def test_banded_paths_agree_with_dense(rng):
    n = 200
    # tridiagonal with complex off-diagonal
    d = rng.normal(size=n)
    e = rng.normal(size=n - 1) + 1j * rng.normal(size=n - 1)
    tri = np.diag(d) + np.diag(e, -1) + np.diag(e.conj(), 1)
    dense = np.linalg.eigvalsh(tri)
    assert np.allclose(mc.eigvals_hermitian(tri), dense, atol=1e-11)
    assert mc.min_abs_eigenvalue(tri) == pytest.approx(np.min(np.abs(dense)), abs=1e-12)
    # pentadiagonal
    m = np.zeros((n, n), dtype=complex)
    for k in range(3):
        v = rng.normal(size=n - k) + (1j * rng.normal(size=n - k) if k else 0)
        m += np.diag(v, -k)
    m = m + np.tril(m, -1).conj().T
    dense = np.linalg.eigvalsh(m)
    assert np.allclose(mc.eigvals_hermitian(m), dense, atol=1e-10)
    ab = mc.to_lower_band(m, 2)
    assert mc.band_min_abs_eigenvalue(ab) == pytest.approx(np.min(np.abs(dense)), abs=1e-12)
    assert mc.band_min_abs_eigenvalue(ab, hint=1e-3) == pytest.approx(np.min(np.abs(dense)), abs=1e-12)
    assert mc.band_min_eigenvalue(ab) == pytest.approx(dense[0], abs=1e-11)


def test_band_window_falls_back_when_spectrum_is_far_from_zero():
    n = 128
    m = 5 * np.eye(n) + 0.1 * (np.eye(n, k=1) + np.eye(n, k=-1))
    assert mc.min_abs_eigenvalue(m) == pytest.approx(np.min(np.abs(np.linalg.eigvalsh(m))), abs=1e-12)


def test_bandwidth():
    assert mc.bandwidth(np.zeros((3, 3))) == 0
    assert mc.bandwidth(np.eye(4, k=2)) == 2


def test_kron_examples():
    eye = np.eye(2)
    assert np.allclose(mc.kron(eye, SIGMA_X), np.block([[SIGMA_X, 0 * eye], [0 * eye, SIGMA_X]]))
    assert np.allclose(mc.kron(SIGMA_Z, eye), np.diag([1, 1, -1, -1]))
    p = mc.kron(SIGMA_X, SIGMA_Y)
    assert np.allclose(p @ p, np.eye(4))


def test_kron_mixed_product(rng):
    a, b, c, d = (rng.normal(size=(3, 3)) for _ in range(4))
    assert np.allclose(mc.kron(a, b) @ mc.kron(c, d), mc.kron(a @ c, b @ d))


def test_kron_cap():
    with pytest.raises(DimensionError):
        mc.kron(np.eye(200), np.eye(100))
    tight = DEFAULT.with_(max_dim=8)
    with pytest.raises(DimensionError):
        mc.kron(np.eye(3), np.eye(3), tight)


def test_matrix_function_examples(rng):
    m = rand_herm(rng, 5)
    assert np.allclose(mc.matrix_function_hermitian(m, lambda t: t), m)
    assert np.allclose(mc.matrix_function_hermitian(SIGMA_X, lambda t: t**2), np.eye(2))
    g = mc.matrix_function_hermitian(np.diag([0.0, 2.0]), lambda t: np.exp(-(t**2)))
    assert np.allclose(g, np.diag([1, np.exp(-4)]))


def test_operator_norm_examples(rng):
    assert mc.operator_norm(np.diag([3.0, -2.0])) == pytest.approx(3.0)
    q, _ = np.linalg.qr(rng.normal(size=(5, 5)) + 1j * rng.normal(size=(5, 5)))
    assert mc.operator_norm(q) == pytest.approx(1.0)
    u, v = rng.normal(size=4), rng.normal(size=4)
    u, v = u / np.linalg.norm(u), v / np.linalg.norm(v)
    assert mc.operator_norm(np.outer(u, v)) == pytest.approx(1.0)


@settings(max_examples=40, deadline=None)
@given(st.integers(1, 6), st.integers(0, 2**32 - 1))
def test_smin_equals_min_over_unit_vectors(n, seed):
    r = np.random.default_rng(seed)
    t = r.normal(size=(n, n)) + 1j * r.normal(size=(n, n))
    s = mc.smallest_singular_value(t)
    assert s >= 0
    assert s <= oracles.random_upper_bound(t, r, 16) + 1e-12
    if s > 1e-8:
        assert s == pytest.approx(1 / np.linalg.norm(np.linalg.inv(t), 2), rel=1e-8)


def test_sturm_count_matches_inertia_oracle(rng):
    n = 40
    d, e = rng.normal(size=n), rng.normal(size=n - 1)
    t = np.diag(d) + np.diag(e, 1) + np.diag(e, -1)
    w = np.linalg.eigvalsh(t)
    for sigma in (-1.0, 0.0, 0.37, w[5] + 1e-9, 2.5):
        assert mc.sturm_count(d, e, sigma) == oracles.count_below(t, sigma)
    # zero pivots: the identity pattern with zero diagonal
    assert mc.sturm_count(np.zeros(4), np.ones(3)) == 2
    band = mc.to_lower_band(t.astype(complex), 1)
    assert mc.band_negative_count(band) == np.count_nonzero(w < 0)
    assert mc.band_min_abs_eigenvalue(band) == pytest.approx(np.min(np.abs(w)), abs=1e-13)
