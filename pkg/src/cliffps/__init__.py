"""Clifford and quadratic pseudospectra of finite tuples of Hermitian matrices."""

from .clifford_rep import GammaRep, gamma_rep, verify_clifford
from .config import DEFAULT, DimensionError, NotHermitianError, Tolerances, ValidationError, ZeroNotFoundError
from .pseudospectra import (
    HermitianTuple,
    LocalizerFamily,
    QuadraticFamily,
    clifford_pseudospectrum,
    quadratic_pseudospectrum,
    spectral_localizer,
    windowed_pseudospectrum,
)
from .scan_engine import Region, ScanGrid, bisect_zero, grid_scan, radial_profile, zero_set

__all__ = [
    "DEFAULT",
    "DimensionError",
    "GammaRep",
    "HermitianTuple",
    "LocalizerFamily",
    "NotHermitianError",
    "QuadraticFamily",
    "Region",
    "ScanGrid",
    "Tolerances",
    "ValidationError",
    "ZeroNotFoundError",
    "bisect_zero",
    "clifford_pseudospectrum",
    "gamma_rep",
    "grid_scan",
    "quadratic_pseudospectrum",
    "radial_profile",
    "spectral_localizer",
    "verify_clifford",
    "windowed_pseudospectrum",
    "zero_set",
]
