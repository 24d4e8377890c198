from __future__ import annotations

import math

import numpy as np
import pytest

from cliffps import hemisphere as hem
from cliffps.config import ValidationError
from cliffps.operator_zoo import hemisphere
from cliffps.pseudospectra import LocalizerFamily, spectral_localizer

import oracles


def test_transfer_state_examples(rng):
    st = hem.transfer_state(1.0, 0.0)
    assert np.allclose(st.m, np.eye(2))
    assert np.allclose(hem.transfer_state(1.0, 1.0).v0, [0, 1])
    for x, z in zip(rng.uniform(0.05, 3, 100), rng.uniform(-2, 3, 100)):
        st = hem.transfer_state(x, z)
        assert st.det == pytest.approx(1.0, abs=1e-12 * max(1, np.abs(st.m).max() ** 2))
        assert np.allclose(st.m, st.m.T)
        assert st.trace == pytest.approx((x * x + z * z + 1) / x)
        assert st.trace - 2 >= -1e-12
    with pytest.raises(ValidationError):
        hem.transfer_state(0.0, 0.5)


def test_polynomial_examples(rng):
    assert hem.e_poly(1, 0) == 0 and hem.e_poly(0, 1) == 0
    assert hem.f_poly(1, 0) == 0 and hem.f_poly(0, 1) == 0
    x, z = rng.uniform(-2, 2, 50), rng.uniform(-2, 2, 50)
    b1 = x * x * z - x * z + x + z**3 - 2 * z * z + 2 * z - 1
    assert np.allclose(hem.f_poly(x, z), b1, atol=1e-12)
    # ∂f/∂z by central differences against the completed-square form
    h = 1e-6
    dfdz = (hem.f_poly(x, z + h) - hem.f_poly(x, z - h)) / (2 * h)
    assert np.allclose(dfdz, (x - 0.5) ** 2 + 3 * (z - 2 / 3) ** 2 + 5 / 12, atol=1e-6)
    assert np.all(dfdz > 0)


def test_surface_examples(rng):
    r, z = rng.uniform(-1.5, 1.5, 200), rng.uniform(-1, 2, 200)
    assert np.max(np.abs(hem.general_b_surface(1, r, z) - hem.e_poly(r, z))) < 1e-12
    assert np.allclose(hem.general_b_surface(0, r, z), r * r * z)
    assert hem.general_b_surface(1, 1, 0) == 0


def test_surface_is_the_parallel_condition(rng):
    for _ in range(200):
        b, x, z = rng.uniform(0, 2.5), rng.uniform(0.1, 1.5), rng.uniform(-0.5, 2.5)
        assert hem.general_b_surface(b, x, z) == pytest.approx(oracles.transfer_determinant(b, x, z), abs=1e-10)


@pytest.mark.parametrize("b", [0.5, 1.0, 2.0, 2.05])
def test_surface_roots_match_quadratic_formula(b):
    for z in np.linspace(0.01, b - 0.01, 17):
        want = [r for r in oracles.surface_radii(b, z) if r <= hem.R_SEARCH_MAX]
        got = hem.surface_roots(b, z)
        assert len(got) == len(want)
        assert np.allclose(got, want, atol=1e-12)


def test_curve_trace_b1_examples():
    pts = hem.curve_trace(1.0, [0.0, 0.5, 1.0])
    assert pts[0].x == pytest.approx(1.0) and not pts[0].accepted and pts[0].cause == "eigenvalue"
    assert pts[1].x == pytest.approx(math.sqrt(0.5) * 0.75**0.25) and pts[1].accepted
    assert pts[1].x == pytest.approx(0.6580, abs=1e-4)
    assert pts[2].x == 0.0 and pts[2].accepted


def test_curve_trace_agrees_with_quartic_oracle():
    for p in hem.curve_trace(1.0, np.linspace(0.02, 0.98, 25)):
        assert p.x == pytest.approx(oracles.b1_curve_x(p.z), abs=1e-14)
        assert p.accepted
        assert abs(p.e_val) <= 1e-10 and p.f_val >= -1e-10 and 0 < p.eig_small < 1
        # truncation leaves a boundary term of order α^N
        assert p.residual <= p.eig_small**200 + 1e-12


def test_curve_trace_rejections():
    out = hem.curve_trace(1.0, [-0.2, 1.3])
    assert [p.cause for p in out] == ["constraint", "constraint"]
    with pytest.raises(ValidationError):
        hem.curve_trace(-1.0, [0.5])
    (deg,) = hem.curve_trace(0.0, [0.0, 0.3])
    assert deg.cause == "degenerate" and (deg.x, deg.z) == (1.0, 0.0)


@pytest.mark.parametrize("b", [2.0, 2.05])
def test_general_b_accepted_points_are_null_vectors(b):
    pts = hem.curve_trace(b, np.linspace(0.05, b - 0.05, 12), n_residual=300)
    acc = [p for p in pts if p.accepted and p.x > 0]
    assert acc
    for p in acc:
        assert p.residual < 1e-8


def test_eigen_membership_examples():
    z = 0.4
    member, alpha = hem.eigen_membership(hem.transfer_state(hem.curve_x(z), z))
    assert member and 0 < alpha < 1
    assert not hem.eigen_membership(hem.transfer_state(0.5, 0.9))[0]
    member, alpha = hem.eigen_membership(hem.transfer_state(1.0, 0.0))
    assert not member and alpha == 1.0


def test_small_eigenvalue_is_accurate_for_large_trace():
    tr = 1e9
    assert hem.small_eigenvalue(tr) * (tr - hem.small_eigenvalue(tr)) == pytest.approx(1.0)


def test_null_vector_residual_decays_on_curve_and_not_off():
    z = 0.5
    x = hem.curve_x(z)
    assert hem.null_vector_residual(x, z, 200) <= 1e-8
    off = [hem.null_vector_residual(0.5, 0.9, n) for n in (50, 100, 200)]
    assert min(off) > 1e-2


def test_special_cases():
    assert hem.special_cases(1.0).singular
    rep = hem.special_cases(0.0)
    assert not rep.singular and all(d != 0 for d in rep.determinants)
    assert not hem.special_cases(2.0).singular


def test_special_case_point_is_in_the_truncated_spectrum():
    loc = spectral_localizer(hemisphere(1.0, 40), (0.0, 0.0, 1.0))
    assert np.min(np.abs(np.linalg.eigvalsh(loc))) < 1e-12


def test_appendix_examples():
    assert hem.f_e(0.5) >= 0 and hem.f_e(-1.0) <= 0 and hem.f_e(2.0) >= 0
    assert hem.appendix_inequality_check(np.linspace(-2, 3, 101)).passed


def test_rotation_symmetry_hypothesis(rng):
    n = 20
    a = hemisphere(1.0, n)
    u, q = hem.rotation_symmetry(0.7, n)
    rotated = a.rotated(u)
    for h, aj in zip(rotated.ops, a.ops):
        assert np.allclose(q @ h @ q.conj().T, aj)


def test_far_edge_localization():
    """Zeros of the truncation on z = 0 inside the unit disk live at the far end.

    This is the finite-size artifact behind the disk z = 0, r < 1: the last site of
    the N x N truncation behaves like a second corner with height 0.
    """
    n = 128
    fam = LocalizerFamily(hemisphere(1.0, n))
    w, v = np.linalg.eigh(fam.matrix((0.3, 0.0, 0.0)))
    k = int(np.argmin(np.abs(w)))
    assert abs(w[k]) < 1e-8
    weight = np.abs(v[:, k]) ** 2
    sites = weight.reshape(n, -1).sum(axis=1)
    assert sites[n // 2 :].sum() > 0.999
