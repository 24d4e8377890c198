"""Discrete Clifford spectrum of the shift triple with a rank-one corner of height b.

On the plane λ = (x, 0, z), x > 0, a null vector a of the localizer (normalized by
a_1 = 1) obeys a two-step recurrence (a_{2n}, a_{2n+1}) = M (a_{2n-2}, a_{2n-1}) with

    M = [[1/x, -z/x], [-z/x, (x² + z²)/x]],   det M = 1,

started from v0 = ((b - z)/x, x + (b - z)²/x). The vector is square summable
exactly when v0 is an eigenvector of M for its eigenvalue inside (0, 1). The
parallel condition det[v0, M v0] = 0 is the quartic surface in (r, z), and the
eigenvalue lands in (0, 1) exactly when the first component of v0 - M v0 has
the sign of b - z.

b = 1 is the case with a full closed form; other b go through the same
recurrence numerically and are flagged experimental.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np
from scipy.optimize import brentq

from .config import DEFAULT, Tolerances, ValidationError
from .operator_zoo import hemisphere
from .pseudospectra import spectral_localizer_sparse

# largest corner height for which the surface description is claimed
B_VALIDATED_MAX = 2.25
R_SEARCH_MAX = 1.2


@dataclass(frozen=True)
class TransferState:
    x: float
    z: float
    b: float
    m: np.ndarray
    v0: np.ndarray

    @property
    def trace(self) -> float:
        return float(self.m[0, 0] + self.m[1, 1])

    @property
    def det(self) -> float:
        return float(np.linalg.det(self.m))


@dataclass(frozen=True)
class CurvePoint:
    x: float
    z: float
    e_val: float
    f_val: float
    eig_small: float
    residual: float
    accepted: bool
    cause: str = ""
    b: float = 1.0


@dataclass(frozen=True)
class SpecialCaseReport:
    z: float
    b: float
    determinants: tuple[float, float, float]
    singular: bool


@dataclass(frozen=True)
class AppendixReport:
    n_samples: int
    min_on_unit: float
    max_below_zero: float
    min_above_one: float
    tol: float

    @property
    def passed(self) -> bool:
        return (
            self.min_on_unit >= -self.tol
            and self.max_below_zero <= self.tol
            and self.min_above_one >= -self.tol
        )


def transfer_state(x: float, z: float, b: float = 1.0) -> TransferState:
    if not x > 0:
        raise ValidationError(f"transfer matrix needs x > 0, got {x}; use special_cases for x = 0")
    m = np.array([[1.0 / x, -z / x], [-z / x, (x * x + z * z) / x]])
    v0 = np.array([(b - z) / x, x + (b - z) ** 2 / x])
    return TransferState(float(x), float(z), float(b), m, v0)


def e_poly(x, z):
    return x**4 - z**4 + 3 * z**3 - 4 * z**2 + 3 * z - 1


def f_poly(x, z, b: float = 1.0):
    """x² (v0 - M v0)_1, whose sign decides whether the eigenvalue is below 1.

    b = 1 gives x²z - xz + x + z³ - 2z² + 2z - 1.
    """
    return (b - z) * (x - 1) + z * x * x + z * (b - z) ** 2


def general_b_surface(b, r, z):
    return (
        b**4 * z
        + b**3 * r**2
        - 3 * b**3 * z**2
        - b**3
        - b**2 * r**2 * z
        + 3 * b**2 * z**3
        + 2 * b**2 * z
        + b * r**4
        - b * r**2
        - b * z**4
        - b * z**2
        + r**2 * z
    )


def curve_x(z):
    """x on the b = 1 curve: |z - 1|^(1/2) (z² - z + 1)^(1/4)."""
    z = np.asarray(z, dtype=float)
    out = np.sqrt(np.abs(z - 1)) * (z * z - z + 1) ** 0.25
    return out if out.ndim else float(out)


def f_e(z):
    """f restricted to the b = 1 curve, as a function of z alone."""
    z = np.asarray(z, dtype=float)
    q = z * z - z + 1
    a = np.abs(z - 1)
    out = z * a * np.sqrt(q) - (z - 1) * np.sqrt(a) * q**0.25 + (z - 1) * q
    return out if out.ndim else float(out)


def small_eigenvalue(trace: float) -> float:
    """Eigenvalue of a det-1 symmetric 2x2 matrix below 1, written to avoid cancellation."""
    disc = max(trace * trace - 4.0, 0.0)
    return 2.0 / (trace + math.sqrt(disc))


def eigen_membership(state: TransferState, tol: float = 1e-8) -> tuple[bool, float]:
    """(v0 is an eigenvector for an eigenvalue in (0, 1), that eigenvalue)."""
    alpha = small_eigenvalue(state.trace)
    if not 0.0 < alpha < 1.0:
        return False, alpha
    v0 = state.v0
    resid = np.linalg.norm(state.m @ v0 - alpha * v0) / np.linalg.norm(v0)
    return bool(resid <= tol), alpha


def _contracting_vector(state: TransferState, length: int) -> np.ndarray:
    """a = (1, a_2, ..., a_length) with the tail carried by the contracting eigenvector.

    v0 is projected onto the eigenvector of the small eigenvalue α and propagated
    as α^k times it. Forward iteration of M is useless here: the rounding
    component along the expanding direction grows like (1/α)^k and swamps the
    vector within a few dozen steps. Off the curve the projection drops part of
    v0, which shows up as residual in the first two rows.
    """
    w, vecs = np.linalg.eigh(state.m)
    alpha, u = w[0], vecs[:, 0]
    head = (u @ state.v0) * u
    a = np.empty(length)
    a[0] = 1.0
    scale = alpha ** np.arange(length // 2 + 1)
    a[1::2] = scale[: len(a[1::2])] * head[0]
    a[2::2] = scale[: len(a[2::2])] * head[1]
    return a


def null_vector_residual(x: float, z: float, n: int, b: float = 1.0) -> float:
    """||L_{(x,0,z)} a|| / ||a|| for the recurrence vector against the n-site truncation."""
    state = transfer_state(x, z, b)
    a = _contracting_vector(state, 2 * n)
    loc = spectral_localizer_sparse(hemisphere(b, n), (x, 0.0, z))
    return float(np.linalg.norm(loc @ a) / np.linalg.norm(a))


def special_cases(z: float, b: float = 1.0, tol: float = 1e-12) -> SpecialCaseReport:
    """x = 0: the localizer splits into blocks [b - z], [[z - b, 1], [1, -z]], [[z, 1], [1, -z]]."""
    dets = (b - z, -z * z + b * z - 1.0, -z * z - 1.0)
    return SpecialCaseReport(float(z), float(b), tuple(float(d) for d in dets), min(abs(d) for d in dets) <= tol)


def appendix_inequality_check(z_samples, tol: float = 1e-12) -> AppendixReport:
    """f_e >= 0 on [0, 1], f_e <= 0 on (-inf, 0], f_e >= 0 on [1, inf)."""
    z = np.asarray(z_samples, dtype=float).ravel()
    vals = f_e(z)
    vals = np.atleast_1d(vals)

    def pick(mask, fn, empty):
        return float(fn(vals[mask])) if np.any(mask) else empty

    return AppendixReport(
        z.size,
        pick((z >= 0) & (z <= 1), np.min, math.inf),
        pick(z <= 0, np.max, -math.inf),
        pick(z >= 1, np.min, math.inf),
        tol,
    )


def surface_roots(b: float, z: float, r_max: float = R_SEARCH_MAX, samples: int = 481) -> list[float]:
    """Roots in r of the surface at fixed z, bracketed by sign changes on [0, r_max]."""
    rs = np.linspace(0.0, r_max, samples)
    vals = general_b_surface(b, rs, z)
    roots = [float(r) for r, v in zip(rs, vals) if v == 0.0]
    for i in np.nonzero(np.sign(vals[:-1]) * np.sign(vals[1:]) < 0)[0]:
        roots.append(brentq(lambda r: general_b_surface(b, r, z), rs[i], rs[i + 1], xtol=1e-15, rtol=1e-15))
    return sorted(roots)


def _point(x: float, z: float, b: float, n_residual: int, tol: Tolerances) -> CurvePoint:
    e_val = float(general_b_surface(b, x, z))
    f_val = float(f_poly(x, z, b))
    if x <= 0.0:
        rep = special_cases(z, b)
        return CurvePoint(x, z, e_val, f_val, math.nan, min(abs(d) for d in rep.determinants), rep.singular,
                          "" if rep.singular else "special_case", b)
    if x * x > 1.0 + 1e-12 or not 0.0 <= z <= b:
        return CurvePoint(x, z, e_val, f_val, math.nan, math.nan, False, "constraint", b)
    state = transfer_state(x, z, b)
    member, alpha = eigen_membership(state)
    residual = null_vector_residual(x, z, n_residual, b) if 0.0 < alpha < 1.0 else math.nan
    if abs(e_val) > tol.curve_tol:
        cause = "nonconvergence"
    elif f_val < -tol.curve_tol:
        cause = "f_sign"
    elif not member:
        cause = "eigenvalue"
    else:
        cause = ""
    return CurvePoint(x, z, e_val, f_val, alpha, residual, cause == "", cause, b)


def curve_trace(b: float, z_samples, n_residual: int = 200, tol: Tolerances = DEFAULT) -> list[CurvePoint]:
    """Points of the discrete spectrum in the half plane x >= 0 at each sampled height.

    b = 1 uses the closed form for x(z); any other b finds the roots of the
    surface in r. Rejected candidates are kept with their cause.

    b = 0 is degenerate: the surface reduces to r²z, the third operator vanishes,
    and the only structure left is the boundary circle r = 1 of the z = 0 disk,
    returned as a single point with cause "degenerate".
    """
    if b < 0:
        raise ValidationError(f"need b >= 0, got {b}")
    if b == 0:
        return [CurvePoint(1.0, 0.0, 0.0, float(f_poly(1.0, 0.0, 0.0)), math.nan, math.nan, False, "degenerate", 0.0)]
    out: list[CurvePoint] = []
    for z in np.asarray(z_samples, dtype=float).ravel():
        z = float(z)
        if not 0.0 <= z <= b:
            out.append(CurvePoint(math.nan, z, math.nan, math.nan, math.nan, math.nan, False, "constraint", b))
            continue
        if b == 1.0:
            candidates = [float(curve_x(z))]
        else:
            candidates = surface_roots(b, z)
            if special_cases(z, b).singular and 0.0 not in candidates:
                candidates.insert(0, 0.0)
        if not candidates:
            out.append(CurvePoint(math.nan, z, math.nan, math.nan, math.nan, math.nan, False, "no_root", b))
        for x in candidates:
            out.append(_point(x, z, b, n_residual, tol))
    return out


def rotation_symmetry(theta: float, n: int) -> tuple[np.ndarray, np.ndarray]:
    """(U, Q) with U a rotation of the x-y plane and Q = diag(e^{-ikθ}) realizing it on the triple."""
    c, s = math.cos(theta), math.sin(theta)
    u = np.array([[c, s, 0.0], [-s, c, 0.0], [0.0, 0.0, 1.0]])
    q = np.diag(np.exp(-1j * theta * np.arange(n)))
    return u, q
