"""Seeded randomized check suites run by the ``oracle-check`` and ``property-suite`` commands."""

from __future__ import annotations

from dataclasses import asdict, dataclass, field

import numpy as np

from . import operator_zoo as zoo
from .clifford_rep import gamma_rep, linear_combination_spectrum_check, verify_clifford
from .matrix_core import operator_norm
from .pseudospectra import (
    HermitianTuple,
    clifford_pseudospectrum,
    commutator_bound,
    quadratic_pseudospectrum,
    spectral_localizer,
    symmetry_check,
)
from .hemisphere import rotation_symmetry


@dataclass(frozen=True)
class Check:
    name: str
    worst: float
    tol: float
    samples: int

    @property
    def passed(self) -> bool:
        return bool(np.isfinite(self.worst) and self.worst <= self.tol)

    def line(self) -> str:
        status = "PASS" if self.passed else "FAIL"
        return f"{status} {self.name}: worst {self.worst:.3e} (tol {self.tol:.1e}, {self.samples} samples)"


@dataclass
class SuiteResult:
    suite: str
    seed: int
    checks: list[Check] = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return all(c.passed for c in self.checks)

    def to_json_obj(self) -> dict:
        return {
            "schema": "cliffps.suite/1",
            "suite": self.suite,
            "seed": self.seed,
            "passed": self.passed,
            "checks": [{**asdict(c), "passed": c.passed} for c in self.checks],
        }


def random_hermitian(rng: np.random.Generator, n: int, scale: float = 1.0) -> np.ndarray:
    m = rng.normal(size=(n, n)) + 1j * rng.normal(size=(n, n))
    return scale * (m + m.conj().T) / 2


def random_tuple(rng: np.random.Generator, d: int, n: int) -> HermitianTuple:
    return HermitianTuple(tuple(random_hermitian(rng, n, 1.0 / np.sqrt(n)) for _ in range(d)))


def random_orthogonal(rng: np.random.Generator, d: int) -> np.ndarray:
    q, r = np.linalg.qr(rng.normal(size=(d, d)))
    return q * np.sign(np.diag(r))


def two_projection_check(rng: np.random.Generator, samples: int = 1000) -> list[Check]:
    xs = rng.uniform(-3, 3, samples)
    ys = rng.uniform(-3, 3, samples)
    zs = rng.uniform(-1, 1, samples)
    dc = dq = 0.0
    for x, y, z in zip(xs, ys, zs):
        a = zoo.two_projection_pair(z)
        dc = max(dc, abs(clifford_pseudospectrum(a, (x, y)) - zoo.mu_c_two_projection_closed(x, y, z)))
        dq = max(dq, abs(quadratic_pseudospectrum(a, (x, y)) - zoo.mu_q_two_projection_closed(x, y, z)))
    return [
        Check("two_projection mu_c closed form", dc, 1e-9, samples),
        Check("two_projection mu_q closed form", dq, 1e-9, samples),
    ]


def universal_check(rng: np.random.Generator, samples: int = 200, z_step: float = 1e-3) -> list[Check]:
    pts = rng.uniform(-2, 2, (samples, 2))
    mq, mcl = zoo.universal_pair_pseudospectra(pts[:, 0], pts[:, 1], zoo.z_grid(z_step))
    return [
        Check("universal mu_c fiber minimum", float(np.max(np.abs(mcl - zoo.mu_c_universal_closed(*pts.T)))), 5e-3, samples),
        Check("universal mu_q fiber minimum", float(np.max(np.abs(mq - zoo.mu_q_universal_closed(*pts.T)))), 5e-3, samples),
    ]


def pauli_check(rng: np.random.Generator, samples: int = 50) -> list[Check]:
    from .scan_engine import bisect_zero

    a = zoo.pauli()
    worst = 0.0
    for _ in range(samples):
        u = rng.normal(size=3)
        worst = max(worst, abs(bisect_zero(a, u, 0.5, 1.5, tol_t=1e-9) - 1.0))
    return [
        Check("pauli sphere radius", worst, 1e-6, samples),
        Check("pauli mu_c at origin", abs(clifford_pseudospectrum(a, (0, 0, 0)) - 1.0), 1e-10, 1),
    ]


def clifford_checks(rng: np.random.Generator, samples: int = 100) -> list[Check]:
    worst = max(verify_clifford(gamma_rep(d)).max_violation for d in range(1, 13))
    dev = 0.0
    for _ in range(samples):
        d = int(rng.integers(1, 9))
        dev = max(dev, linear_combination_spectrum_check(gamma_rep(d), rng.normal(size=d))[1])
    return [Check("clifford relations d=1..12", worst, 1e-13, 12), Check("scalar combination spectrum", dev, 1e-10, samples)]


def lipschitz_radius_check(rng: np.random.Generator, samples: int = 10_000, slack: float = 1e-8) -> list[Check]:
    lip = rad = -np.inf
    for _ in range(samples):
        d = int(rng.integers(1, 5))
        a = random_tuple(rng, d, int(rng.integers(1, 6)))
        lam, nu = rng.normal(scale=1.5, size=(2, d))
        mu_lam, mu_nu = clifford_pseudospectrum(a, lam), clifford_pseudospectrum(a, nu)
        lip = max(lip, abs(mu_lam - mu_nu) - np.linalg.norm(lam - nu))
        bound = operator_norm(spectral_localizer(a, np.zeros(d)))
        rad = max(rad, abs(mu_lam - np.linalg.norm(lam)) - bound)
    return [
        Check("lipschitz in lambda (excess)", max(lip, 0.0), slack, samples),
        Check("distance to |lambda| vs ||L_0|| (excess)", max(rad, 0.0), slack, samples),
    ]


def closeness_check(rng: np.random.Generator, samples: int = 1000, slack: float = 1e-8) -> list[Check]:
    worst = -np.inf
    for _ in range(samples):
        a = random_tuple(rng, 3, int(rng.integers(1, 6)))
        lam = rng.normal(size=3)
        gap = abs(clifford_pseudospectrum(a, lam) ** 2 - quadratic_pseudospectrum(a, lam) ** 2)
        worst = max(worst, gap - commutator_bound(a))
    return [Check("closeness |mu_c^2 - mu_q^2| (excess)", max(worst, 0.0), slack, samples)]


def symmetry_checks(rng: np.random.Generator, samples: int = 100, slack: float = 1e-8) -> list[Check]:
    n = 24
    hem = zoo.hemisphere(1.0, n)
    rot = 0.0
    for _ in range(samples // 4):
        theta = float(rng.uniform(0, 2 * np.pi))
        u, q = rotation_symmetry(theta, n)
        lam = rng.uniform(-1.2, 1.2, 3)
        rep = symmetry_check(hem, u, q, lam, tol=slack)
        rot = max(rot, rep.hypothesis_violation, rep.mu_c_gap, rep.mu_q_gap)
    cov = 0.0
    for _ in range(samples):
        d = int(rng.integers(1, 5))
        a = random_tuple(rng, d, int(rng.integers(1, 6)))
        u = random_orthogonal(rng, d)
        lam = rng.normal(size=d)
        # Â_j = Σ u_js A_s satisfies μ^Q_{Uλ}(Â) = μ^Q_λ(A)
        cov = max(cov, abs(quadratic_pseudospectrum(a.rotated(u), u @ lam) - quadratic_pseudospectrum(a, lam)))
    return [
        Check("hemisphere rotation symmetry", rot, slack, samples // 4),
        Check("O(d) covariance of mu_q", cov, slack, samples),
    ]


def oracle_suite(seed: int) -> SuiteResult:
    rng = np.random.default_rng(seed)
    res = SuiteResult("oracle-check", seed)
    res.checks += two_projection_check(rng)
    res.checks += universal_check(rng)
    res.checks += pauli_check(rng)
    return res


def property_suite(seed: int, samples: int = 10_000) -> SuiteResult:
    rng = np.random.default_rng(seed)
    res = SuiteResult("property-suite", seed)
    res.checks += clifford_checks(rng)
    res.checks += lipschitz_radius_check(rng, samples)
    res.checks += closeness_check(rng, max(samples // 10, 1))
    res.checks += symmetry_checks(rng)
    return res
