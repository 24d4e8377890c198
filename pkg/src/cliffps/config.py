"""Numerical tolerances and the exception types shared across the package."""

from __future__ import annotations

from dataclasses import dataclass, replace


@dataclass(frozen=True)
class Tolerances:
    eig_tol: float = 1e-10
    hermitian_tol: float = 1e-12
    max_dim: int = 16384
    member_eps: float = 1e-8
    curve_tol: float = 1e-10
    radicand_floor: float = -1e-9

    def with_(self, **kwargs) -> "Tolerances":
        return replace(self, **kwargs)


DEFAULT = Tolerances()


class ValidationError(ValueError):
    """Input violates a documented precondition."""


class NotHermitianError(ValidationError):
    def __init__(self, violation: float, allowed: float):
        self.violation = violation
        self.allowed = allowed
        super().__init__(
            f"matrix is not Hermitian: max|M - M*| = {violation:.3e} exceeds {allowed:.3e}"
        )


class DimensionError(ValidationError):
    """Shapes do not line up, or a product would exceed the dimension cap."""


class ZeroNotFoundError(LookupError):
    def __init__(self, message: str, t_min: float, mu_min: float):
        self.t_min = t_min
        self.mu_min = mu_min
        super().__init__(message)
