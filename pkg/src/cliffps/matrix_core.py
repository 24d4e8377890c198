"""Dense complex linear algebra used by every other module.

Everything operates on plain ``numpy.ndarray`` objects. Hermitian eigenproblems
go through LAPACK; matrices with a narrow band (localizers of tridiagonal
operators are themselves tridiagonal in site-major ordering) are routed to the
banded drivers, which is what makes scans of large truncations affordable.
"""

from __future__ import annotations

from typing import Callable, NamedTuple

import numpy as np
import scipy.linalg as sla

from .config import DEFAULT, DimensionError, NotHermitianError, Tolerances, ValidationError

# below this size the dense driver is as fast as anything else
_BAND_MIN_DIM = 64


class EigenDecomposition(NamedTuple):
    values: np.ndarray
    vectors: np.ndarray


def as_matrix(a, name: str = "matrix") -> np.ndarray:
    """Coerce to a finite 2-D complex array."""
    m = np.asarray(a, dtype=complex)
    if m.ndim != 2 or m.shape[0] < 1 or m.shape[1] < 1:
        raise DimensionError(f"{name} must be a non-empty 2-D array, got shape {m.shape}")
    if not np.all(np.isfinite(m)):
        raise ValidationError(f"{name} has non-finite entries")
    return m


def hermitian_violation(m: np.ndarray) -> float:
    return float(np.max(np.abs(m - m.conj().T))) if m.size else 0.0


def check_hermitian(a, tol: Tolerances = DEFAULT, name: str = "matrix") -> np.ndarray:
    """Validate Hermiticity (relative to the largest entry) and return the exact Hermitian part."""
    m = as_matrix(a, name)
    if m.shape[0] != m.shape[1]:
        raise DimensionError(f"{name} must be square, got shape {m.shape}")
    allowed = tol.hermitian_tol * max(float(np.max(np.abs(m))), 1.0)
    violation = hermitian_violation(m)
    if violation > allowed:
        raise NotHermitianError(violation, allowed)
    return (m + m.conj().T) / 2


def is_hermitian(m: np.ndarray, tol: Tolerances = DEFAULT) -> bool:
    if m.shape[0] != m.shape[1]:
        return False
    return hermitian_violation(m) <= tol.hermitian_tol * max(float(np.max(np.abs(m))), 1.0)


def eig_hermitian(a, tol: Tolerances = DEFAULT) -> EigenDecomposition:
    """Ascending eigenvalues and a unitary eigenvector frame."""
    m = check_hermitian(a, tol)
    w, v = np.linalg.eigh(m)
    return EigenDecomposition(w, v)


def bandwidth(m: np.ndarray) -> int:
    """Largest |i - j| over the nonzero entries (0 for diagonal or zero matrices)."""
    rows, cols = np.nonzero(m)
    if rows.size == 0:
        return 0
    return int(np.max(np.abs(rows - cols)))


def to_lower_band(m: np.ndarray, k: int) -> np.ndarray:
    """LAPACK lower band storage: ``ab[i, j] = m[j + i, j]``."""
    n = m.shape[0]
    ab = np.zeros((k + 1, n), dtype=m.dtype)
    for i in range(k + 1):
        ab[i, : n - i] = np.diagonal(m, -i)
    return ab


def _uses_band(n: int, k: int) -> bool:
    return n >= _BAND_MIN_DIM and k <= n // 16


def band_eigvals(ab: np.ndarray) -> np.ndarray:
    """All eigenvalues of a Hermitian matrix in lower band storage."""
    if ab.shape[0] == 1:
        return np.sort(ab[0].real)
    if ab.shape[0] == 2:
        # a Hermitian tridiagonal is diagonally-unitarily similar to the real one with |e|
        return sla.eigvalsh_tridiagonal(ab[0].real, np.abs(ab[1, :-1]))
    return sla.eigvals_banded(ab, lower=True)


def band_min_eigenvalue(ab: np.ndarray) -> float:
    if ab.shape[0] == 2:
        w = sla.eigvalsh_tridiagonal(ab[0].real, np.abs(ab[1, :-1]), select="i", select_range=(0, 0))
    elif ab.shape[0] == 1:
        return float(np.min(ab[0].real))
    else:
        w = sla.eigvals_banded(ab, lower=True, select="i", select_range=(0, 0))
    return float(w[0])


def _band_norm_bound(ab: np.ndarray) -> float:
    # Gershgorin bound on the spectral radius
    n = ab.shape[1]
    rows = np.abs(ab[0]).copy()
    for i in range(1, ab.shape[0]):
        off = np.abs(ab[i, : n - i])
        rows[i:] += off
        rows[: n - i] += off
    return float(np.max(rows))


def sturm_count(diag, off, sigma: float = 0.0) -> int:
    """Number of eigenvalues below sigma of the real symmetric tridiagonal (diag, off).

    Counts negative pivots of the LDL^T factorization of T - sigma I
    (Sylvester's law of inertia). Pivots smaller than pivmin in magnitude are
    replaced by -pivmin, the LAPACK bisection convention.
    """
    d = np.asarray(diag, dtype=float).tolist()
    e2 = (np.asarray(off, dtype=float) ** 2).tolist()
    sigma = float(sigma)
    pivmin = float(np.finfo(float).tiny) * max(1.0, max(e2, default=0.0))
    q = d[0] - sigma
    count = 0
    for i in range(len(d)):
        if i:
            q = d[i] - sigma - e2[i - 1] / q
        if abs(q) < pivmin:
            q = -pivmin
        if q < 0.0:
            count += 1
    return count


def band_negative_count(ab: np.ndarray) -> int:
    """Number of negative eigenvalues of a Hermitian matrix in lower band storage."""
    if ab.shape[0] == 1:
        return int(np.count_nonzero(ab[0].real < 0))
    if ab.shape[0] == 2:
        return sturm_count(ab[0].real, np.abs(ab[1, :-1]))
    return int(np.count_nonzero(band_eigvals(ab) < 0))


def band_min_abs_eigenvalue(ab: np.ndarray, hint: float | None = None) -> float:
    """Smallest |eigenvalue| of a Hermitian matrix in lower band storage.

    Tridiagonal input counts the negative eigenvalues first and then computes
    only the two eigenvalues on either side of zero. Wider bands use a window
    search around zero, widened until non-empty.
    """
    n = ab.shape[1]
    if ab.shape[0] == 1:
        return float(np.min(np.abs(ab[0].real)))
    if ab.shape[0] == 2:
        d, e = ab[0].real, np.abs(ab[1, :-1])
        k = sturm_count(d, e)
        w = sla.eigvalsh_tridiagonal(d, e, select="i", select_range=(max(k - 1, 0), min(k, n - 1)))
        return float(np.min(np.abs(w)))
    bound = _band_norm_bound(ab)
    if bound == 0.0:
        return 0.0
    r = hint * 1.5 + 1e-300 if hint is not None and hint > 0 else bound / 64.0
    while True:
        r = min(r, 1.01 * bound)
        w = sla.eigvals_banded(ab, lower=True, select="v", select_range=(-r, r))
        if w.size:
            return float(np.min(np.abs(w)))
        if r >= bound:
            # the window already covers the whole spectrum; fall back to a full solve
            return float(np.min(np.abs(band_eigvals(ab))))
        r *= 4.0


def eigvals_hermitian(a, tol: Tolerances = DEFAULT) -> np.ndarray:
    """Ascending eigenvalues, using a banded driver when the structure allows it."""
    m = check_hermitian(a, tol)
    n = m.shape[0]
    k = bandwidth(m)
    if _uses_band(n, k):
        return band_eigvals(to_lower_band(m, k))
    return np.linalg.eigvalsh(m)


def min_abs_eigenvalue(m: np.ndarray, tol: Tolerances = DEFAULT) -> float:
    """min |λ| over the spectrum of a Hermitian matrix, i.e. its smallest singular value."""
    m = check_hermitian(m, tol)
    n = m.shape[0]
    k = bandwidth(m)
    if _uses_band(n, k):
        return band_min_abs_eigenvalue(to_lower_band(m, k))
    return float(np.min(np.abs(np.linalg.eigvalsh(m))))


def smallest_singular_value(t, tol: Tolerances = DEFAULT) -> float:
    """inf over unit vectors v of ||T v||.

    Defined on the domain side, so a wide matrix (more columns than rows) has a
    kernel and returns 0. Hermitian input uses min |eigenvalue| directly, which
    avoids the loss of half the digits that squaring into T*T would cost.
    """
    m = as_matrix(t)
    rows, cols = m.shape
    if rows == cols and is_hermitian(m, tol):
        return min_abs_eigenvalue(m, tol)
    if rows < cols:
        return 0.0
    return float(np.linalg.svd(m, compute_uv=False)[-1])


def smallest_singular_value_normal(t, tol: Tolerances = DEFAULT) -> float:
    """sqrt(s_min(T*T)), the route through the modulus |T|."""
    m = as_matrix(t)
    w = eig_hermitian(m.conj().T @ m, tol).values
    return float(np.sqrt(max(w[0], 0.0)))


def operator_norm(a, tol: Tolerances = DEFAULT) -> float:
    m = as_matrix(a)
    if m.shape[0] == m.shape[1] and is_hermitian(m, tol):
        w = eigvals_hermitian(m, tol)
        return float(max(abs(w[0]), abs(w[-1])))
    return float(np.linalg.norm(m, 2))


def kron(a, b, tol: Tolerances = DEFAULT) -> np.ndarray:
    a = as_matrix(a, "left factor")
    b = as_matrix(b, "right factor")
    rows = a.shape[0] * b.shape[0]
    cols = a.shape[1] * b.shape[1]
    if max(rows, cols) > tol.max_dim:
        raise DimensionError(f"kron result {rows}x{cols} exceeds max_dim={tol.max_dim}")
    return np.kron(a, b)


def matrix_function_hermitian(a, g: Callable[[np.ndarray], np.ndarray], tol: Tolerances = DEFAULT) -> np.ndarray:
    """g(M) = V diag(g(λ)) V* by the spectral theorem; g must accept an array of reals."""
    w, v = eig_hermitian(a, tol)
    gw = np.asarray(g(w))
    out = (v * gw) @ v.conj().T
    if np.isrealobj(gw):
        out = (out + out.conj().T) / 2
    return out


def commutator(a: np.ndarray, b: np.ndarray) -> np.ndarray:
    return a @ b - b @ a
