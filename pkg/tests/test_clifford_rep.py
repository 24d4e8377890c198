from __future__ import annotations

import numpy as np
import pytest

from cliffps.clifford_rep import PAULI, gamma_rep, linear_combination_spectrum_check, verify_clifford
from cliffps.config import ValidationError


@pytest.mark.parametrize("d", range(1, 13))
def test_relations_hold(d):
    rep = gamma_rep(d)
    assert rep.d == d
    assert rep.size == 2 ** (d // 2)
    assert verify_clifford(rep).passed


def test_low_dimensional_conventions():
    assert np.array_equal(gamma_rep(1).gammas[0], np.ones((1, 1)))
    assert all(np.array_equal(g, p) for g, p in zip(gamma_rep(2).gammas, PAULI[:2]))
    assert all(np.array_equal(g, p) for g, p in zip(gamma_rep(3).gammas, PAULI))


def test_gammas_are_read_only():
    with pytest.raises(ValueError):
        gamma_rep(3).gammas[0][0, 0] = 5


@pytest.mark.parametrize("bad", [0, -1, 21, 2.5])
def test_invalid_counts(bad):
    with pytest.raises(ValidationError):
        gamma_rep(bad)


def test_broken_rep_is_reported():
    g = gamma_rep(3).gammas
    rep = type(gamma_rep(3))((g[0], g[0], g[2]))
    report = verify_clifford(rep)
    assert not report.passed
    assert report.anticommutation == pytest.approx(2.0)


def test_conjugated_rep_still_passes(rng):
    q, _ = np.linalg.qr(rng.normal(size=(4, 4)) + 1j * rng.normal(size=(4, 4)))
    assert verify_clifford(gamma_rep(5).conjugated(q), tol=1e-12).passed


def test_scalar_combination_examples():
    assert linear_combination_spectrum_check(gamma_rep(3), [1.0, 0, 0])[0]
    ok, dev = linear_combination_spectrum_check(gamma_rep(2), [3.0, 4.0])
    assert ok and np.allclose(np.linalg.eigvalsh(gamma_rep(2).combination([3, 4])), [-5, 5])
    with pytest.raises(ValidationError):
        gamma_rep(2).combination([1.0])
