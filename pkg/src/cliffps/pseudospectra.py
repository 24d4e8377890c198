"""Spectral localizers and the Clifford, quadratic and windowed pseudospectra.

For a tuple A = (A_1, ..., A_d) of Hermitian matrices and a probe point λ in R^d:

* localizer            L_λ(A) = Σ (A_j - λ_j) ⊗ Γ_j
* Clifford value       μ^C_λ = s_min(L_λ)
* quadratic form       Q_λ(A) = Σ (A_j - λ_j)^2,   μ^Q_λ = sqrt(s_min(Q_λ))
* windowed value       1 - ||g(A_1 - λ_1) ... g(A_d - λ_d)||

The tensor ordering is operator ⊗ gamma, i.e. site-major, so a tuple of banded
operators gives a banded localizer.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Callable, Iterable, Sequence

import numpy as np
from scipy import sparse

from . import matrix_core as mc
from .clifford_rep import GammaRep, gamma_rep
from .config import DEFAULT, DimensionError, Tolerances, ValidationError


@dataclass(frozen=True, eq=False)
class HermitianTuple:
    ops: tuple[np.ndarray, ...]

    def __post_init__(self):
        if len(self.ops) < 1:
            raise ValidationError("a tuple needs at least one operator")
        checked = tuple(mc.check_hermitian(a, name=f"A_{j + 1}") for j, a in enumerate(self.ops))
        dims = {a.shape[0] for a in checked}
        if len(dims) != 1:
            raise DimensionError(f"operators have different sizes: {sorted(dims)}")
        for a in checked:
            a.setflags(write=False)
        object.__setattr__(self, "ops", checked)

    @classmethod
    def of(cls, *ops) -> "HermitianTuple":
        return cls(tuple(ops))

    @property
    def d(self) -> int:
        return len(self.ops)

    @property
    def dim(self) -> int:
        return self.ops[0].shape[0]

    def __getitem__(self, item):
        return self.ops[item]

    def __len__(self):
        return len(self.ops)

    def conjugated(self, q: np.ndarray) -> "HermitianTuple":
        return HermitianTuple(tuple(q @ a @ q.conj().T for a in self.ops))

    def rotated(self, u: np.ndarray) -> "HermitianTuple":
        """Â_j = Σ_s u_js A_s for a real orthogonal d x d matrix u."""
        u = np.asarray(u, dtype=float)
        return HermitianTuple(tuple(sum(u[j, s] * self.ops[s] for s in range(self.d)) for j in range(self.d)))

    def subtuple(self, indices: Iterable[int]) -> "HermitianTuple":
        return HermitianTuple(tuple(self.ops[i] for i in indices))


@dataclass(frozen=True)
class PseudospectrumSample:
    lam: tuple[float, ...]
    mu_c: float | None = None
    mu_q: float | None = None
    mu_w: float | None = None


def _probe(lam, d: int) -> np.ndarray:
    lam = np.atleast_1d(np.asarray(lam, dtype=float))
    if lam.shape != (d,):
        raise DimensionError(f"probe point must have {d} coordinates, got shape {lam.shape}")
    if not np.all(np.isfinite(lam)):
        raise ValidationError("probe point has non-finite coordinates")
    return lam


def _rep_for(a: HermitianTuple, rep: GammaRep | None) -> GammaRep:
    rep = gamma_rep(a.d) if rep is None else rep
    if rep.d != a.d:
        raise DimensionError(f"gamma representation has {rep.d} generators, tuple has {a.d}")
    return rep


def spectral_localizer(a: HermitianTuple, lam, rep: GammaRep | None = None, tol: Tolerances = DEFAULT) -> np.ndarray:
    rep = _rep_for(a, rep)
    lam = _probe(lam, a.d)
    eye = np.eye(a.dim)
    return sum(mc.kron(aj - lj * eye, g, tol) for aj, lj, g in zip(a.ops, lam, rep.gammas))


def spectral_localizer_sparse(a: HermitianTuple, lam, rep: GammaRep | None = None) -> sparse.csr_matrix:
    """The localizer as a sparse matrix, for products with long vectors."""
    rep = _rep_for(a, rep)
    lam = _probe(lam, a.d)
    eye = sparse.identity(a.dim, format="csr")
    return sum(
        sparse.kron(sparse.csr_matrix(aj) - lj * eye, sparse.csr_matrix(g), format="csr")
        for aj, lj, g in zip(a.ops, lam, rep.gammas)
    )


class LocalizerFamily:
    """λ ↦ L_λ(A) with the λ-independent part assembled once.

    L_λ = L_0 - I ⊗ (Σ λ_j Γ_j); the second term is block diagonal, so when L_0
    is banded the whole family shares its band and evaluation never touches a
    dense matrix.
    """

    def __init__(self, a: HermitianTuple, rep: GammaRep | None = None, tol: Tolerances = DEFAULT):
        self.tuple = a
        self.rep = _rep_for(a, rep)
        self.tol = tol
        n, s = a.dim, self.rep.size
        self.l0 = sum(mc.kron(aj, g, tol) for aj, g in zip(a.ops, self.rep.gammas))
        self.k = max(mc.bandwidth(self.l0), s - 1)
        self.banded = mc._uses_band(n * s, self.k)
        if self.banded:
            self.ab0 = mc.to_lower_band(self.l0, self.k)
            eye = np.eye(n)
            self.shift_bands = [mc.to_lower_band(np.kron(eye, g), self.k) for g in self.rep.gammas]

    def matrix(self, lam) -> np.ndarray:
        lam = _probe(lam, self.tuple.d)
        shift = self.rep.combination(lam)
        return self.l0 - np.kron(np.eye(self.tuple.dim), shift)

    def band(self, lam) -> np.ndarray:
        lam = _probe(lam, self.tuple.d)
        ab = self.ab0.copy()
        for lj, b in zip(lam, self.shift_bands):
            if lj:
                ab -= lj * b
        return ab

    def mu(self, lam, hint: float | None = None) -> float:
        if self.banded:
            return mc.band_min_abs_eigenvalue(self.band(lam), hint)
        return float(np.min(np.abs(np.linalg.eigvalsh(self.matrix(lam)))))

    def signature(self, lam) -> int:
        """Number of negative eigenvalues of L_λ."""
        if self.banded:
            return mc.band_negative_count(self.band(lam))
        return int(np.count_nonzero(np.linalg.eigvalsh(self.matrix(lam)) < 0))

    def norm_bound(self) -> float:
        return mc.operator_norm(self.l0, self.tol)


class QuadraticFamily:
    """λ ↦ Q_λ(A) = Σ A_j² - 2 Σ λ_j A_j + |λ|² I, assembled once."""

    def __init__(self, a: HermitianTuple, tol: Tolerances = DEFAULT):
        self.tuple = a
        self.tol = tol
        self.squares = sum(aj @ aj for aj in a.ops)
        self.k = max(mc.bandwidth(self.squares), *(mc.bandwidth(aj) for aj in a.ops))
        self.banded = mc._uses_band(a.dim, self.k)
        if self.banded:
            self.ab_sq = mc.to_lower_band(self.squares, self.k)
            self.ab_ops = [mc.to_lower_band(aj, self.k) for aj in a.ops]

    def matrix(self, lam) -> np.ndarray:
        lam = _probe(lam, self.tuple.d)
        out = self.squares - 2 * sum(lj * aj for lj, aj in zip(lam, self.tuple.ops))
        return out + float(lam @ lam) * np.eye(self.tuple.dim)

    def min_eigenvalue(self, lam) -> float:
        if self.banded:
            lam = _probe(lam, self.tuple.d)
            ab = self.ab_sq - 2 * sum(lj * b for lj, b in zip(lam, self.ab_ops))
            ab[0] += float(lam @ lam)
            return mc.band_min_eigenvalue(ab)
        return float(np.linalg.eigvalsh(self.matrix(lam))[0])

    def mu(self, lam) -> float:
        return float(np.sqrt(max(self.min_eigenvalue(lam), 0.0)))


def clifford_pseudospectrum(a: HermitianTuple, lam, rep: GammaRep | None = None, tol: Tolerances = DEFAULT) -> float:
    return mc.smallest_singular_value(spectral_localizer(a, lam, rep, tol), tol)


def quadratic_form(a: HermitianTuple, lam) -> np.ndarray:
    lam = _probe(lam, a.d)
    eye = np.eye(a.dim)
    out = np.zeros((a.dim, a.dim), dtype=complex)
    for aj, lj in zip(a.ops, lam):
        shifted = aj - lj * eye
        out += shifted @ shifted
    return (out + out.conj().T) / 2


def quadratic_pseudospectrum(a: HermitianTuple, lam, tol: Tolerances = DEFAULT) -> float:
    w = mc.eigvals_hermitian(quadratic_form(a, lam), tol)
    return float(np.sqrt(max(w[0], 0.0)))


def stacked_operator(a: HermitianTuple, lam) -> np.ndarray:
    """M_λ: the (d·n) x n column stack of the A_j - λ_j."""
    lam = _probe(lam, a.d)
    eye = np.eye(a.dim)
    return np.vstack([aj - lj * eye for aj, lj in zip(a.ops, lam)])


def quadratic_pseudospectrum_stacked(a: HermitianTuple, lam) -> float:
    """μ^Q as s_min of M_λ; no square root of a small eigenvalue, so accurate near zero."""
    return mc.smallest_singular_value(stacked_operator(a, lam))


def gaussian_window(width: float = 1.0) -> Callable[[np.ndarray], np.ndarray]:
    def g(t):
        return np.exp(-((np.asarray(t, dtype=float) / width) ** 2))

    return g


def windowed_pseudospectrum(
    a: HermitianTuple,
    lam,
    g: Callable[[np.ndarray], np.ndarray] | None = None,
    order: Sequence[int] | None = None,
    tol: Tolerances = DEFAULT,
) -> float:
    """1 - ||g(A_{o1} - λ_{o1}) ... g(A_{od} - λ_{od})|| for the product order o."""
    lam = _probe(lam, a.d)
    g = gaussian_window() if g is None else g
    order = list(range(a.d)) if order is None else list(order)
    if sorted(order) != list(range(a.d)):
        raise ValidationError(f"order must be a permutation of 0..{a.d - 1}, got {order}")
    g0 = float(np.asarray(g(np.zeros(1)))[0])
    if abs(g0 - 1.0) > 1e-12:
        raise ValidationError(f"window must satisfy g(0) = 1, got {g0}")
    eye = np.eye(a.dim)
    w = eye.astype(complex)
    slack = 1e-12
    for j in order:
        dec = mc.eig_hermitian(a.ops[j] - lam[j] * eye, tol)
        gv = np.asarray(g(dec.values), dtype=float)
        if np.any(gv < -slack) or np.any(gv > 1 + slack):
            raise ValidationError(f"window leaves [0, 1] on the spectrum of A_{j + 1} - λ_{j + 1}")
        w = w @ ((dec.vectors * gv) @ dec.vectors.conj().T)
    return float(min(max(1.0 - np.linalg.norm(w, 2), 0.0), 1.0))


def commutator_bound(a: HermitianTuple) -> float:
    """Σ_{j<k} ||[A_j, A_k]||."""
    return float(
        sum(np.linalg.norm(mc.commutator(x, y), 2) for x, y in itertools.combinations(a.ops, 2))
    )


def sample(a: HermitianTuple, lam, which: Iterable[str] = ("C", "Q"), rep: GammaRep | None = None, g=None) -> PseudospectrumSample:
    which = set(which)
    lam = _probe(lam, a.d)
    return PseudospectrumSample(
        tuple(float(v) for v in lam),
        clifford_pseudospectrum(a, lam, rep) if "C" in which else None,
        quadratic_pseudospectrum(a, lam) if "Q" in which else None,
        windowed_pseudospectrum(a, lam, g) if "W" in which else None,
    )


@dataclass(frozen=True)
class PartitionReport:
    cross_commutator: float
    identity_residual: float
    scalar_slot_residual: float | None
    tol: float

    @property
    def precondition_ok(self) -> bool:
        return self.cross_commutator <= self.tol

    @property
    def passed(self) -> bool:
        if not self.precondition_ok or self.identity_residual > self.tol:
            return False
        return self.scalar_slot_residual is None or self.scalar_slot_residual <= self.tol


def localizer_partition_check(a: HermitianTuple, r: int, lam, tol: float = 1e-10) -> PartitionReport:
    """Check L_λ² = L_left² + L_right² when the first r operators commute with the rest.

    Both halves are built from the generators of the full representation, which
    is how they embed at the full gamma size. When the right half is a single
    scalar αI, also check μ^C(A)² = μ^C(A_1..A_{d-1})² + (α - λ_d)².
    """
    if not 1 <= r < a.d:
        raise ValidationError(f"split index must satisfy 1 <= r < d={a.d}, got {r}")
    lam = _probe(lam, a.d)
    scale = max(1.0, max(np.linalg.norm(aj, 2) for aj in a.ops) + float(np.max(np.abs(lam))))
    cross = max(
        float(np.linalg.norm(mc.commutator(a.ops[j], a.ops[k]), 2)) for j in range(r) for k in range(r, a.d)
    )
    rep = gamma_rep(a.d)
    eye = np.eye(a.dim)

    def partial(indices):
        return sum(np.kron(a.ops[j] - lam[j] * eye, rep.gammas[j]) for j in indices)

    full = partial(range(a.d))
    left, right = partial(range(r)), partial(range(r, a.d))
    resid = float(np.max(np.abs(full @ full - (left @ left + right @ right)))) / scale**2

    scalar_resid = None
    if r == a.d - 1:
        last = a.ops[-1]
        alpha = float(np.mean(np.diag(last).real))
        if np.max(np.abs(last - alpha * eye)) <= tol:
            head = a.subtuple(range(a.d - 1))
            lhs = clifford_pseudospectrum(a, lam) ** 2
            rhs = clifford_pseudospectrum(head, lam[:-1]) ** 2 + (alpha - lam[-1]) ** 2
            scalar_resid = abs(lhs - rhs) / scale**2
    return PartitionReport(cross, resid, scalar_resid, tol)


@dataclass(frozen=True)
class SymmetryReport:
    hypothesis_violation: float
    mu_c_gap: float
    mu_q_gap: float
    tol: float

    @property
    def hypothesis_ok(self) -> bool:
        return self.hypothesis_violation <= self.tol

    @property
    def passed(self) -> bool:
        return self.hypothesis_ok and max(self.mu_c_gap, self.mu_q_gap) <= self.tol


def symmetry_check(a: HermitianTuple, u: np.ndarray, q: np.ndarray, lam, tol: float = 1e-9) -> SymmetryReport:
    """If Q Â_j Q* = A_j with Â_j = Σ_s u_js A_s, the pseudospectra at Uλ and λ agree.

    A failed hypothesis is reported through ``hypothesis_ok`` rather than raised.
    """
    u = np.asarray(u, dtype=float)
    q = np.asarray(q, dtype=complex)
    if u.shape != (a.d, a.d):
        raise DimensionError(f"orthogonal matrix must be {a.d}x{a.d}")
    if q.shape != (a.dim, a.dim):
        raise DimensionError(f"unitary must be {a.dim}x{a.dim}")
    lam = _probe(lam, a.d)
    orth = float(np.max(np.abs(u.T @ u - np.eye(a.d))))
    unit = float(np.max(np.abs(q.conj().T @ q - np.eye(a.dim))))
    hat = a.rotated(u)
    equiv = max(float(np.max(np.abs(q @ h @ q.conj().T - aj))) for h, aj in zip(hat.ops, a.ops))
    ulam = u @ lam
    dc = abs(clifford_pseudospectrum(a, ulam) - clifford_pseudospectrum(a, lam))
    dq = abs(quadratic_pseudospectrum(a, ulam) - quadratic_pseudospectrum(a, lam))
    return SymmetryReport(max(orth, unit, equiv), dc, dq, tol)
