"""Irreducible representations of the Clifford relations.

Generators are Hermitian, square to the identity and pairwise anticommute.
d = 2 and d = 3 use the Pauli conventions (σx, σy) and (σx, σy, σz); larger odd
d is built recursively, and even d takes the first d generators of the d + 1
construction, which has the same size 2^⌊d/2⌋.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache

import numpy as np

from .config import ValidationError

SIGMA_X = np.array([[0, 1], [1, 0]], dtype=complex)
SIGMA_Y = np.array([[0, -1j], [1j, 0]], dtype=complex)
SIGMA_Z = np.array([[1, 0], [0, -1]], dtype=complex)
PAULI = (SIGMA_X, SIGMA_Y, SIGMA_Z)

MAX_GENERATORS = 20


@dataclass(frozen=True)
class GammaRep:
    gammas: tuple[np.ndarray, ...]

    @property
    def d(self) -> int:
        return len(self.gammas)

    @property
    def size(self) -> int:
        return self.gammas[0].shape[0]

    def conjugated(self, u: np.ndarray) -> "GammaRep":
        """The unitarily equivalent representation U Γ_j U*."""
        return GammaRep(tuple(u @ g @ u.conj().T for g in self.gammas))

    def combination(self, coeffs) -> np.ndarray:
        coeffs = np.asarray(coeffs, dtype=float)
        if coeffs.shape != (self.d,):
            raise ValidationError(f"expected {self.d} coefficients, got shape {coeffs.shape}")
        return sum(c * g for c, g in zip(coeffs, self.gammas))


@dataclass(frozen=True)
class CliffordReport:
    hermitian: float
    involution: float
    anticommutation: float
    tol: float

    @property
    def max_violation(self) -> float:
        return max(self.hermitian, self.involution, self.anticommutation)

    @property
    def passed(self) -> bool:
        return self.max_violation <= self.tol


def _odd_rep(d: int) -> tuple[np.ndarray, ...]:
    if d == 1:
        return (np.ones((1, 1), dtype=complex),)
    if d == 3:
        return PAULI
    prev = _odd_rep(d - 2)
    eye = np.eye(prev[0].shape[0], dtype=complex)
    return tuple(np.kron(g, SIGMA_Z) for g in prev) + (np.kron(eye, SIGMA_X), np.kron(eye, SIGMA_Y))


@lru_cache(maxsize=None)
def gamma_rep(d: int) -> GammaRep:
    if not isinstance(d, (int, np.integer)) or d < 1 or d > MAX_GENERATORS:
        raise ValidationError(f"number of generators must be in 1..{MAX_GENERATORS}, got {d!r}")
    d = int(d)
    gammas = _odd_rep(d) if d % 2 else _odd_rep(d + 1)[:d]
    for g in gammas:
        g.setflags(write=False)
    return GammaRep(gammas)


def verify_clifford(rep: GammaRep, tol: float = 1e-13) -> CliffordReport:
    eye = np.eye(rep.size)
    herm = invol = anti = 0.0
    for j, g in enumerate(rep.gammas):
        herm = max(herm, float(np.max(np.abs(g - g.conj().T))))
        invol = max(invol, float(np.max(np.abs(g @ g - eye))))
        for h in rep.gammas[j + 1 :]:
            anti = max(anti, float(np.max(np.abs(g @ h + h @ g))))
    return CliffordReport(herm, invol, anti, tol)


def linear_combination_spectrum_check(rep: GammaRep, alpha, tol: float = 1e-10) -> tuple[bool, float]:
    """Every eigenvalue of Σ α_j Γ_j should be ±||α||; returns (passed, max deviation)."""
    m = rep.combination(alpha)
    w = np.linalg.eigvalsh(m)
    radius = float(np.linalg.norm(alpha))
    dev = float(np.max(np.abs(np.abs(w) - radius)))
    return dev <= tol, dev
