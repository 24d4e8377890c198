"""Concrete operator tuples and closed-form pseudospectra for the two-projection family."""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from typing import Any

import numpy as np

from .clifford_rep import PAULI
from .config import DEFAULT, Tolerances, ValidationError
from .pseudospectra import HermitianTuple

KINDS = ("commuting_points", "pauli", "two_projection", "universal_pair", "hemisphere", "position_momentum")

_DEFAULT_PARAMS: dict[str, dict[str, Any]] = {
    "commuting_points": {"points": [[0.0, 0.0, 0.0]]},
    "pauli": {},
    "two_projection": {"z": 0.0},
    "universal_pair": {"z_step": 1e-3},
    "hemisphere": {"b": 1.0, "n": 256},
    "position_momentum": {"n": 256, "half_width": 12.0},
}


@dataclass(frozen=True)
class ZooSpec:
    kind: str
    params: dict = field(default_factory=dict)

    def __post_init__(self):
        if self.kind not in KINDS:
            raise ValidationError(f"unknown zoo kind {self.kind!r}; expected one of {', '.join(KINDS)}")
        merged = {**_DEFAULT_PARAMS[self.kind], **self.params}
        unknown = set(merged) - set(_DEFAULT_PARAMS[self.kind])
        if unknown:
            raise ValidationError(f"unknown parameters for {self.kind}: {sorted(unknown)}")
        object.__setattr__(self, "params", merged)
        self.validate()

    def validate(self) -> None:
        p = self.params
        if self.kind == "two_projection" and not -1.0 <= p["z"] <= 1.0:
            raise ValidationError(f"two_projection needs -1 <= z <= 1, got {p['z']}")
        if self.kind == "hemisphere":
            if p["b"] < 0:
                raise ValidationError(f"hemisphere needs b >= 0, got {p['b']}")
            if int(p["n"]) != p["n"] or p["n"] < 4:
                raise ValidationError(f"hemisphere needs an integer truncation n >= 4, got {p['n']}")
        if self.kind == "position_momentum":
            if int(p["n"]) != p["n"] or p["n"] < 16:
                raise ValidationError(f"position_momentum needs an integer grid size n >= 16, got {p['n']}")
            if p["half_width"] <= 0:
                raise ValidationError(f"position_momentum needs half_width > 0, got {p['half_width']}")
        if self.kind == "commuting_points":
            pts = np.asarray(p["points"], dtype=float)
            if pts.ndim != 2 or pts.shape[0] < 1 or pts.shape[1] < 1:
                raise ValidationError("commuting_points needs a non-empty list of equal-length points")
        if self.kind == "universal_pair" and not 0 < p["z_step"] <= 1:
            raise ValidationError(f"universal_pair needs 0 < z_step <= 1, got {p['z_step']}")

    @property
    def d(self) -> int:
        if self.kind == "commuting_points":
            return len(self.params["points"][0])
        return 3 if self.kind in ("pauli", "hemisphere") else 2

    def to_json(self) -> str:
        return json.dumps({"kind": self.kind, "params": self.params}, sort_keys=True)

    @classmethod
    def from_json(cls, text: str | dict) -> "ZooSpec":
        obj = json.loads(text) if isinstance(text, str) else text
        if not isinstance(obj, dict) or "kind" not in obj:
            raise ValidationError("zoo spec JSON must be an object with a 'kind' field")
        return cls(obj["kind"], dict(obj.get("params", {})))


def commuting_points(points) -> HermitianTuple:
    pts = np.asarray(points, dtype=float)
    return HermitianTuple(tuple(np.diag(pts[:, j]).astype(complex) for j in range(pts.shape[1])))


def pauli() -> HermitianTuple:
    return HermitianTuple(PAULI)


def two_projection_pair(z: float) -> HermitianTuple:
    """(U, V_z): U = σz and V_z the reflection with diagonal (z, -z)."""
    if not -1.0 <= z <= 1.0:
        raise ValidationError(f"need -1 <= z <= 1, got {z}")
    c = np.sqrt(max(1.0 - z * z, 0.0))
    u = np.array([[1.0, 0.0], [0.0, -1.0]], dtype=complex)
    v = np.array([[z, c], [c, -z]], dtype=complex)
    return HermitianTuple((u, v))


def hemisphere(b: float, n: int) -> HermitianTuple:
    """N x N truncations of the real part, imaginary part and rank-one corner of the shift triple."""
    if b < 0 or n < 4:
        raise ValidationError(f"need b >= 0 and n >= 4, got b={b}, n={n}")
    up = np.eye(n, k=1)
    down = np.eye(n, k=-1)
    a1 = 0.5 * (up + down)
    a2 = 0.5j * (down - up)
    a3 = np.zeros((n, n))
    a3[0, 0] = b
    return HermitianTuple((a1.astype(complex), a2, a3.astype(complex)))


def position_grid(n: int, half_width: float) -> tuple[np.ndarray, float]:
    x = np.linspace(-half_width, half_width, n)
    return x, 2.0 * half_width / (n - 1)


def position_momentum(n: int, half_width: float) -> HermitianTuple:
    """(P, Q) on a uniform grid: Q = diag(x_k), P = -i times the central difference, Dirichlet ends."""
    if n < 16 or half_width <= 0:
        raise ValidationError(f"need n >= 16 and half_width > 0, got n={n}, half_width={half_width}")
    x, h = position_grid(n, half_width)
    p = np.zeros((n, n), dtype=complex)
    i = np.arange(n - 1)
    p[i, i + 1] = -1j / (2 * h)
    p[i + 1, i] = 1j / (2 * h)
    return HermitianTuple((p, np.diag(x).astype(complex)))


def build(spec: ZooSpec) -> HermitianTuple:
    p = spec.params
    if spec.kind == "commuting_points":
        return commuting_points(p["points"])
    if spec.kind == "pauli":
        return pauli()
    if spec.kind == "two_projection":
        return two_projection_pair(float(p["z"]))
    if spec.kind == "hemisphere":
        return hemisphere(float(p["b"]), int(p["n"]))
    if spec.kind == "position_momentum":
        return position_momentum(int(p["n"]), float(p["half_width"]))
    raise ValidationError(
        "universal_pair is a family over z in [-1, 1], not a single tuple; use universal_pair_pseudospectra"
    )


def interior_commutator_defect(n: int, half_width: float) -> float:
    """max over interior rows of |([P, Q] + i) f| for f in {1, x}.

    The central difference is exact on affine functions, so this is pure roundoff
    for a correct discretization. The matrix [P, Q] + iI itself always has i on
    its diagonal (Q is diagonal), hence the test on functions.
    """
    a = position_momentum(n, half_width)
    p, q = a.ops
    c = p @ q - q @ p + 1j * np.eye(n)
    x, _ = position_grid(n, half_width)
    probes = [np.ones(n), x / half_width]
    return max(float(np.max(np.abs((c @ f)[1:-1]))) for f in probes)


def _checked_sqrt(radicand, tol: Tolerances):
    radicand = np.asarray(radicand, dtype=float)
    if np.any(radicand < tol.radicand_floor):
        raise ValidationError(f"negative radicand {float(np.min(radicand)):.3e}; formula used outside its domain")
    return np.sqrt(np.maximum(radicand, 0.0))


# The closed forms below are written as (a² - b²)/(a + b) instead of a - b, where
# a = x² + y² + 2 and b = 2√(...): same value, no cancellation near the zero set.


def mu_q_two_projection_closed(x, y, z, tol: Tolerances = DEFAULT):
    """sqrt(x² + y² + 2 - 2 sqrt(x² + 2zxy + y²))."""
    x, y, z = (np.asarray(v, dtype=float) for v in (x, y, z))
    s = x * x + y * y
    inner = _checked_sqrt(s + 2 * z * x * y, tol)
    out = _checked_sqrt((s * s - 8 * z * x * y + 4) / (s + 2 + 2 * inner), tol)
    return out if out.ndim else float(out)


def mu_c_two_projection_closed(x, y, z, tol: Tolerances = DEFAULT):
    """sqrt(x² + y² + 2 - 2 sqrt(x² + 2xyz + y² + 1 - z²))."""
    x, y, z = (np.asarray(v, dtype=float) for v in (x, y, z))
    s = x * x + y * y
    inner = _checked_sqrt(s + 2 * z * x * y + 1 - z * z, tol)
    out = _checked_sqrt((s * s - 8 * z * x * y + 4 * z * z) / (s + 2 + 2 * inner), tol)
    return out if out.ndim else float(out)


CORNERS = np.array([[-1.0, -1.0], [-1.0, 1.0], [1.0, -1.0], [1.0, 1.0]])


def mu_q_universal_closed(x, y):
    """Distance from (x, y) to the four corners (±1, ±1)."""
    x, y = np.asarray(x, dtype=float), np.asarray(y, dtype=float)
    out = np.min([np.hypot(x - cx, y - cy) for cx, cy in CORNERS], axis=0)
    return out if out.ndim else float(out)


def mu_c_universal_closed(x, y):
    """Fiber value at the interior maximizer z = xy while |xy| <= 1, else the quadratic value.

    x² + y² + 2 - 2 sqrt((x² + 1)(y² + 1)) = (x² - y²)² / (x² + y² + 2 + 2 sqrt(...)).
    """
    x, y = np.asarray(x, dtype=float), np.asarray(y, dtype=float)
    s = x * x + y * y
    inside = np.abs(x * y) <= 1.0
    cross = np.abs(x * x - y * y) / np.sqrt(s + 2 + 2 * np.sqrt((x * x + 1) * (y * y + 1)))
    out = np.where(inside, cross, mu_q_universal_closed(x, y))
    return out if out.ndim else float(out)


def z_grid(step: float) -> np.ndarray:
    """Samples of [-1, 1] with spacing at most ``step``, both endpoints included."""
    if not 0 < step <= 2:
        raise ValidationError(f"z step must be in (0, 2], got {step}")
    return np.linspace(-1.0, 1.0, int(np.ceil(2.0 / step)) + 1)


def universal_pair_pseudospectra(x, y, zs) -> tuple:
    """(μ^Q, μ^C) of the universal pair as the minimum over the fibers z in ``zs``.

    The universal algebra is the continuous 2 x 2 matrix functions on [-1, 1],
    so s_min of a localizer is the infimum of the fiberwise values.
    """
    zs = np.asarray(zs, dtype=float).ravel()
    if zs.size == 0:
        raise ValidationError("z grid is empty")
    if np.any(np.abs(zs) > 1):
        raise ValidationError("z grid must lie in [-1, 1]")
    x, y = np.broadcast_arrays(np.asarray(x, dtype=float), np.asarray(y, dtype=float))
    mq = np.full(x.shape, np.inf)
    mcl = np.full(x.shape, np.inf)
    for z in zs:
        np.minimum(mq, mu_q_two_projection_closed(x, y, z), out=mq)
        np.minimum(mcl, mu_c_two_projection_closed(x, y, z), out=mcl)
    if mq.ndim == 0:
        return float(mq), float(mcl)
    return mq, mcl
