"""Grid scans, radial slices and ray root-finding for pseudospectra.

Every probe point is an independent task. Results are stored by lattice index,
so the output does not depend on how the work was split across processes.
"""

from __future__ import annotations

import csv
import io
import json
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from typing import Callable, Iterable, Sequence

import numpy as np
from scipy.optimize import minimize_scalar

from .clifford_rep import GammaRep
from .config import DimensionError, ValidationError, ZeroNotFoundError
from .operator_zoo import universal_pair_pseudospectra, z_grid
from .pseudospectra import (
    HermitianTuple,
    LocalizerFamily,
    PseudospectrumSample,
    QuadraticFamily,
    windowed_pseudospectrum,
)

GRID_SCHEMA_ID = "cliffps.scan_grid/1"
FIELDS = ("C", "Q", "W")


@dataclass(frozen=True)
class Region:
    lo: tuple[float, ...]
    hi: tuple[float, ...]
    resolution: tuple[int, ...]

    def __post_init__(self):
        lo = tuple(float(v) for v in np.atleast_1d(self.lo))
        hi = tuple(float(v) for v in np.atleast_1d(self.hi))
        res = tuple(int(v) for v in np.atleast_1d(self.resolution))
        if len(res) == 1 and len(lo) > 1:
            res = res * len(lo)
        if not len(lo) == len(hi) == len(res):
            raise DimensionError("lo, hi and resolution must have the same length")
        if any(a >= b for a, b in zip(lo, hi)):
            raise ValidationError(f"need lo < hi on every axis, got lo={lo}, hi={hi}")
        if any(r < 2 for r in res):
            raise ValidationError(f"need at least 2 samples per axis, got {res}")
        object.__setattr__(self, "lo", lo)
        object.__setattr__(self, "hi", hi)
        object.__setattr__(self, "resolution", res)

    @classmethod
    def cube(cls, lo: float, hi: float, d: int, res: int) -> "Region":
        return cls((lo,) * d, (hi,) * d, (res,) * d)

    @property
    def d(self) -> int:
        return len(self.lo)

    def axes(self) -> list[np.ndarray]:
        return [np.linspace(a, b, r) for a, b, r in zip(self.lo, self.hi, self.resolution)]

    @property
    def spacing(self) -> tuple[float, ...]:
        return tuple((b - a) / (r - 1) for a, b, r in zip(self.lo, self.hi, self.resolution))

    def points(self) -> np.ndarray:
        mesh = np.meshgrid(*self.axes(), indexing="ij")
        return np.stack([m.ravel() for m in mesh], axis=1)

    def to_dict(self) -> dict:
        return {"lo": list(self.lo), "hi": list(self.hi), "resolution": list(self.resolution)}


@dataclass(frozen=True)
class Plane:
    """Affine embedding λ = origin + Σ_i s_i basis[i] of scan coordinates into R^d."""

    origin: tuple[float, ...]
    basis: tuple[tuple[float, ...], ...]

    @classmethod
    def coordinate(cls, d: int, axes: Sequence[int], fixed: float | Sequence[float] = 0.0) -> "Plane":
        origin = np.broadcast_to(np.asarray(fixed, dtype=float), (d,)).copy()
        origin[list(axes)] = 0.0
        basis = np.zeros((len(axes), d))
        for i, ax in enumerate(axes):
            basis[i, ax] = 1.0
        return cls(tuple(origin), tuple(map(tuple, basis)))

    def embed(self, coords: np.ndarray) -> np.ndarray:
        return np.asarray(self.origin) + np.atleast_2d(coords) @ np.asarray(self.basis)

    def to_dict(self) -> dict:
        return {"origin": list(self.origin), "basis": [list(b) for b in self.basis]}


@dataclass
class ScanGrid:
    region: Region
    lambdas: np.ndarray
    mu_c: np.ndarray
    mu_q: np.ndarray
    mu_w: np.ndarray
    epsilon: float
    which: tuple[str, ...]
    plane: Plane | None = None
    meta: dict = field(default_factory=dict)

    @property
    def coords(self) -> np.ndarray:
        return self.region.points()

    @property
    def shape(self) -> tuple[int, ...]:
        return self.region.resolution

    def field(self, which: str = "C") -> np.ndarray:
        return {"C": self.mu_c, "Q": self.mu_q, "W": self.mu_w}[which]

    def samples(self) -> list[PseudospectrumSample]:
        def opt(v):
            return None if np.isnan(v) else float(v)

        return [
            PseudospectrumSample(tuple(map(float, lam)), opt(c), opt(q), opt(w))
            for lam, c, q, w in zip(self.lambdas, self.mu_c, self.mu_q, self.mu_w)
        ]

    def to_csv(self) -> str:
        buf = io.StringIO()
        writer = csv.writer(buf, lineterminator="\n")
        d = self.lambdas.shape[1]
        writer.writerow([f"lambda_{j + 1}" for j in range(d)] + ["mu_c", "mu_q", "mu_w"])
        for lam, c, q, w in zip(self.lambdas, self.mu_c, self.mu_q, self.mu_w):
            writer.writerow([_fmt(v) for v in lam] + [_fmt(c), _fmt(q), _fmt(w)])
        return buf.getvalue()

    def to_json_obj(self) -> dict:
        d = self.lambdas.shape[1]
        columns = [f"lambda_{j + 1}" for j in range(d)] + ["mu_c", "mu_q", "mu_w"]
        flat = np.column_stack([self.lambdas, self.mu_c, self.mu_q, self.mu_w]).ravel()
        return {
            "schema": GRID_SCHEMA_ID,
            "region": self.region.to_dict(),
            "plane": self.plane.to_dict() if self.plane else None,
            "epsilon": self.epsilon,
            "which": list(self.which),
            "columns": columns,
            "values": [None if np.isnan(v) else float(v) for v in flat],
            "meta": self.meta,
        }

    def to_json(self) -> str:
        return json.dumps(self.to_json_obj(), sort_keys=True)


def _fmt(v: float) -> str:
    return "" if np.isnan(v) else format(float(v), ".17g")


# state of a worker process, built once from the pickled tuple
_WORKER: dict = {}


def _init_worker(a: HermitianTuple, rep: GammaRep | None, which: tuple[str, ...], g) -> None:
    _WORKER.clear()
    _WORKER.update(
        tuple=a,
        which=which,
        g=g,
        loc=LocalizerFamily(a, rep) if "C" in which else None,
        quad=QuadraticFamily(a) if "Q" in which else None,
    )


def _evaluate(lambdas: np.ndarray) -> np.ndarray:
    out = np.full((len(lambdas), 3), np.nan)
    w = _WORKER
    for i, lam in enumerate(lambdas):
        if w["loc"] is not None:
            out[i, 0] = w["loc"].mu(lam)
        if w["quad"] is not None:
            out[i, 1] = w["quad"].mu(lam)
        if "W" in w["which"]:
            out[i, 2] = windowed_pseudospectrum(w["tuple"], lam, w["g"])
    return out


def _chunks(n: int, parts: int) -> list[slice]:
    bounds = np.linspace(0, n, parts + 1).astype(int)
    return [slice(a, b) for a, b in zip(bounds[:-1], bounds[1:]) if b > a]


def grid_scan(
    a: HermitianTuple,
    region: Region,
    which: Iterable[str] = ("C",),
    rep: GammaRep | None = None,
    plane: Plane | None = None,
    epsilon: float | None = None,
    workers: int = 1,
    g: Callable | None = None,
) -> ScanGrid:
    which = tuple(f for f in FIELDS if f in set(which))
    if not which:
        raise ValidationError("nothing to compute: 'which' must include C, Q or W")
    if plane is None and region.d != a.d:
        raise DimensionError(f"region has {region.d} axes but the tuple has d={a.d}")
    if plane is not None and (len(plane.origin) != a.d or len(plane.basis) != region.d):
        raise DimensionError("plane embedding does not match region and tuple dimensions")
    if workers < 1:
        raise ValidationError(f"workers must be >= 1, got {workers}")
    coords = region.points()
    lambdas = plane.embed(coords) if plane else coords
    if workers == 1:
        _init_worker(a, rep, which, g)
        values = _evaluate(lambdas)
    else:
        parts = _chunks(len(lambdas), 4 * workers)
        values = np.empty((len(lambdas), 3))
        with ProcessPoolExecutor(workers, initializer=_init_worker, initargs=(a, rep, which, g)) as pool:
            for sl, chunk in zip(parts, pool.map(_evaluate, [lambdas[sl] for sl in parts])):
                values[sl] = chunk
    eps = max(region.spacing) if epsilon is None else float(epsilon)
    return ScanGrid(region, lambdas, values[:, 0], values[:, 1], values[:, 2], eps, which, plane)


def universal_scan(region: Region, z_step: float = 1e-3) -> ScanGrid:
    """μ^C and μ^Q of the universal pair of order-two unitaries by fiber minimization."""
    if region.d != 2:
        raise DimensionError("the universal pair lives in the plane")
    pts = region.points()
    mq, mcl = universal_pair_pseudospectra(pts[:, 0], pts[:, 1], z_grid(z_step))
    nan = np.full(len(pts), np.nan)
    return ScanGrid(region, pts, mcl, mq, nan, max(region.spacing), ("C", "Q"), meta={"z_step": z_step})


def zero_mask(grid: ScanGrid, epsilon: float | None = None, which: str = "C") -> np.ndarray:
    eps = grid.epsilon if epsilon is None else float(epsilon)
    vals = grid.field(which)
    if np.all(np.isnan(vals)):
        raise ValidationError(f"grid has no {which} values")
    return vals <= eps


def zero_set(grid: ScanGrid, epsilon: float | None = None, which: str = "C") -> np.ndarray:
    """Scan coordinates of the lattice points with μ <= ε."""
    return grid.coords[zero_mask(grid, epsilon, which)]


def _ray(direction, d: int, origin=None) -> tuple[np.ndarray, np.ndarray]:
    u = np.asarray(direction, dtype=float)
    if u.shape != (d,) or not np.linalg.norm(u) > 0:
        raise DimensionError(f"direction must be a nonzero {d}-vector")
    u = u / np.linalg.norm(u)
    o = np.zeros(d) if origin is None else np.asarray(origin, dtype=float)
    return o, u


def radial_profile(
    a: HermitianTuple,
    direction,
    t_samples,
    which: Iterable[str] = ("C",),
    rep: GammaRep | None = None,
    origin=None,
) -> list[PseudospectrumSample]:
    """Samples along λ = origin + t·direction (direction normalized)."""
    which = set(which)
    o, u = _ray(direction, a.d, origin)
    loc = LocalizerFamily(a, rep) if "C" in which else None
    quad = QuadraticFamily(a) if "Q" in which else None
    out = []
    for t in np.asarray(t_samples, dtype=float).ravel():
        lam = o + t * u
        out.append(
            PseudospectrumSample(
                tuple(map(float, lam)),
                loc.mu(lam) if loc else None,
                quad.mu(lam) if quad else None,
                windowed_pseudospectrum(a, lam) if "W" in which else None,
            )
        )
    return out


def bisect_zero(
    a: HermitianTuple,
    direction,
    t_lo: float,
    t_hi: float,
    tol_t: float = 1e-9,
    epsilon: float | None = None,
    rep: GammaRep | None = None,
    origin=None,
    coarse: int = 64,
) -> float:
    """Locate a zero of μ^C along a ray.

    A coarse pass finds the lowest sample. If the number of negative eigenvalues
    of the localizer changes across its neighbours, an eigenvalue crosses zero
    there and is bisected on that count; otherwise (eigenvalue pairs touching
    zero without crossing) the dip is minimized directly. Both steps lean on μ^C
    being 1-Lipschitz, which makes the coarse spacing a safe detection threshold.
    """
    if not t_lo < t_hi:
        raise ValidationError("need t_lo < t_hi")
    o, u = _ray(direction, a.d, origin)
    fam = LocalizerFamily(a, rep)
    ts = np.linspace(t_lo, t_hi, coarse + 1)
    mus = np.array([fam.mu(o + t * u) for t in ts])
    i = int(np.argmin(mus))
    step = ts[1] - ts[0]
    eps = step if epsilon is None else epsilon
    if mus[i] > eps:
        raise ZeroNotFoundError(
            f"no dip below {eps:.3g} on [{t_lo}, {t_hi}]; smallest value {mus[i]:.3g} at t={ts[i]:.6g}",
            float(ts[i]),
            float(mus[i]),
        )
    lo, hi = ts[max(i - 1, 0)], ts[min(i + 1, coarse)]
    s_lo, s_hi = fam.signature(o + lo * u), fam.signature(o + hi * u)
    if s_lo != s_hi:
        # the crossing may sit on either side of the sample
        mid_sig = fam.signature(o + ts[i] * u)
        if i > 0 and mid_sig != s_lo:
            hi, s_hi = ts[i], mid_sig
        elif i < coarse and mid_sig != s_hi:
            lo, s_lo = ts[i], mid_sig
        while hi - lo > tol_t:
            mid = 0.5 * (lo + hi)
            if fam.signature(o + mid * u) == s_lo:
                lo = mid
            else:
                hi = mid
        return float(0.5 * (lo + hi))
    res = minimize_scalar(lambda t: fam.mu(o + t * u), bounds=(lo, hi), method="bounded",
                          options={"xatol": tol_t})
    return float(res.x)


@dataclass(frozen=True)
class SweepResult:
    sizes: tuple[int, ...]
    points: np.ndarray
    values: np.ndarray  # shape (len(sizes), len(points))
    slack: float

    def non_increasing(self) -> np.ndarray:
        """Per point: every value is at most the previous size's value plus ``slack``."""
        return np.all(np.diff(self.values, axis=0) <= self.slack, axis=0)


def truncation_sweep(
    builder: Callable[[int], HermitianTuple],
    sizes: Sequence[int],
    points,
    which: str = "C",
    slack: float = 0.0,
) -> SweepResult:
    """Evaluate μ at fixed probe points over growing truncation sizes."""
    pts = np.atleast_2d(np.asarray(points, dtype=float))
    values = np.empty((len(sizes), len(pts)))
    for i, n in enumerate(sizes):
        a = builder(n)
        fam = LocalizerFamily(a) if which == "C" else QuadraticFamily(a)
        values[i] = [fam.mu(p) for p in pts]
    return SweepResult(tuple(sizes), pts, values, slack)
